/// A real number stored as `mant * exp(ln_scale)`.
///
/// Keeps long hypergeometric sums and products finite when the plain `f64`
/// value would overflow or underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mant: f64,
    pub ln_scale: f64,
}

const BIG: f64 = 1e250;
const LN_BIG: f64 = 575.646_273_248_511_4;

impl Scaled {
    pub const ONE: Scaled = Scaled {
        mant: 1.0,
        ln_scale: 0.0,
    };
    pub const ZERO: Scaled = Scaled {
        mant: 0.0,
        ln_scale: 0.0,
    };

    pub fn from_f64(v: f64) -> Self {
        Scaled {
            mant: v,
            ln_scale: 0.0,
        }
    }

    /// `exp(ln)` without overflow.
    pub fn from_ln(ln: f64) -> Self {
        Scaled {
            mant: 1.0,
            ln_scale: ln,
        }
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0.0
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn ln_abs(self) -> f64 {
        self.mant.abs().ln() + self.ln_scale
    }

    /// Plain value; may overflow to infinity or underflow to zero.
    pub fn value(self) -> f64 {
        if self.mant == 0.0 {
            return 0.0;
        }
        self.mant.signum() * self.ln_abs().exp()
    }

    fn renorm(mut self) -> Self {
        let m = self.mant.abs();
        if m > BIG {
            self.mant /= BIG;
            self.ln_scale += LN_BIG;
        } else if m != 0.0 && m < 1.0 / BIG {
            self.mant *= BIG;
            self.ln_scale -= LN_BIG;
        }
        self
    }

    pub fn mul_f64(self, r: f64) -> Self {
        Scaled {
            mant: self.mant * r,
            ln_scale: self.ln_scale,
        }
        .renorm()
    }

    pub fn mul(self, o: Scaled) -> Self {
        Scaled {
            mant: self.mant * o.mant,
            ln_scale: self.ln_scale + o.ln_scale,
        }
        .renorm()
    }

    pub fn add(self, o: Scaled) -> Self {
        if o.mant == 0.0 {
            return self;
        }
        if self.mant == 0.0 {
            return o;
        }
        let (hi, lo) = if self.ln_scale >= o.ln_scale {
            (self, o)
        } else {
            (o, self)
        };
        Scaled {
            mant: hi.mant + lo.mant * (lo.ln_scale - hi.ln_scale).exp(),
            ln_scale: hi.ln_scale,
        }
        .renorm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_overflow_in_long_products() {
        let mut s = Scaled::ONE;
        for _ in 0..100 {
            s = s.mul_f64(1e100);
        }
        assert!((s.ln_abs() - 100.0 * 1e100f64.ln()).abs() < 1e-9);
        assert_eq!(s.value(), f64::INFINITY);
    }

    #[test]
    fn add_mixed_scales() {
        let a = Scaled::from_ln(800.0);
        let b = Scaled::from_ln(799.0);
        let s = a.add(b);
        assert!((s.ln_abs() - (800.0 + (1.0 + (-1.0f64).exp()).ln())).abs() < 1e-12);
        assert_eq!(
            Scaled::from_f64(2.0).add(Scaled::from_f64(-2.0)).value(),
            0.0
        );
    }
}
