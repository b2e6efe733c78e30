//! Truncated Taylor series ("jets") used to evaluate wavefunctions and
//! operator images together with their first few derivatives exactly.
//!
//! A `Jet` holds the Taylor coefficients of a function about a point, up to
//! [`MAX_ORDER`]. All elementary operations propagate coefficients with the
//! usual power-series recurrences, so any expression built from them yields
//! machine-precision derivatives — no finite differencing is involved.

/// Highest derivative order a jet can carry.
pub const MAX_ORDER: usize = 4;

const LEN: usize = MAX_ORDER + 1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [f64; LEN],
    order: usize,
}

impl Jet {
    /// Jet of the identity function at `x`.
    pub fn variable(x: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = x;
        c[1] = 1.0;
        Jet { c, order: MAX_ORDER }
    }

    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = v;
        Jet { c, order: MAX_ORDER }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// k-th derivative. Panics if the jet does not carry order `k`.
    pub fn derivative(&self, k: usize) -> f64 {
        assert!(k <= self.order, "jet carries order {}, asked for {}", self.order, k);
        self.c[k] * factorial(k)
    }

    /// Jet of the derivative function (loses one order).
    pub fn differentiate(&self) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let mut c = [0.0; LEN];
        for k in 0..self.order {
            c[k] = self.c[k + 1] * (k + 1) as f64;
        }
        Jet { c, order: self.order - 1 }
    }

    pub fn neg(&self) -> Self {
        let mut c = self.c;
        for v in &mut c {
            *v = -*v;
        }
        Jet { c, order: self.order }
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.c;
        for v in &mut c {
            *v *= s;
        }
        Jet { c, order: self.order }
    }

    pub fn add(&self, rhs: &Jet) -> Self {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; LEN];
        for k in 0..=order {
            c[k] = self.c[k] + rhs.c[k];
        }
        Jet { c, order }
    }

    pub fn sub(&self, rhs: &Jet) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Jet) -> Self {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; LEN];
        for k in 0..=order {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.c[j] * rhs.c[k - j];
            }
            c[k] = acc;
        }
        Jet { c, order }
    }

    pub fn div(&self, rhs: &Jet) -> Self {
        assert!(rhs.c[0] != 0.0, "division by a jet with zero value");
        let order = self.order.min(rhs.order);
        let mut c = [0.0; LEN];
        for k in 0..=order {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= rhs.c[j] * c[k - j];
            }
            c[k] = acc / rhs.c[0];
        }
        Jet { c, order }
    }

    pub fn recip(&self) -> Self {
        Jet::constant(1.0).truncated(self.order).div(self)
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut c = [0.0; LEN];
        c[..=order].copy_from_slice(&self.c[..=order]);
        Jet { c, order }
    }

    pub fn exp(&self) -> Self {
        let mut c = [0.0; LEN];
        c[0] = self.c[0].exp();
        for k in 1..=self.order {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * c[k - j];
            }
            c[k] = acc / k as f64;
        }
        Jet { c, order: self.order }
    }

    pub fn sinh_cosh(&self) -> (Self, Self) {
        let mut s = [0.0; LEN];
        let mut ch = [0.0; LEN];
        s[0] = self.c[0].sinh();
        ch[0] = self.c[0].cosh();
        for k in 1..=self.order {
            let (mut sa, mut ca) = (0.0, 0.0);
            for j in 1..=k {
                sa += j as f64 * self.c[j] * ch[k - j];
                ca += j as f64 * self.c[j] * s[k - j];
            }
            s[k] = sa / k as f64;
            ch[k] = ca / k as f64;
        }
        (Jet { c: s, order: self.order }, Jet { c: ch, order: self.order })
    }

    pub fn sinh(&self) -> Self {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Self {
        self.sinh_cosh().1
    }

    /// Real power `self^p`; the jet's value must be strictly positive.
    pub fn powf(&self, p: f64) -> Self {
        let u0 = self.c[0];
        assert!(u0 > 0.0, "powf requires a positive base, got {u0}");
        let mut c = [0.0; LEN];
        c[0] = u0.powf(p);
        for k in 1..=self.order {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += (j as f64 * (p + 1.0) - k as f64) * self.c[j] * c[k - j];
            }
            c[k] = acc / (k as f64 * u0);
        }
        Jet { c, order: self.order }
    }

    /// Polynomial in `self` with the given coefficients (constant term first).
    pub fn poly(&self, coeffs: &[f64]) -> Self {
        let mut acc = Jet::constant(0.0).truncated(self.order);
        for &a in coeffs.iter().rev() {
            acc = acc.mul(self).add(&Jet::constant(a).truncated(self.order));
        }
        acc
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}
