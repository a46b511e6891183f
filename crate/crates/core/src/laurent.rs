//! Integer Laurent polynomials in one variable.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    /// exponent -> coefficient, zero coefficients never stored
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// -x^2 - x^-2, the loop value of the bracket.
    pub fn delta() -> Self {
        let mut p = LaurentPoly::monomial(2, -1);
        p.add_term(-2, -1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot.checked_add(coeff).expect("coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e, &c) in &self.terms {
            out.add_term(e, c.checked_mul(k).expect("coefficient overflow"));
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.add_term(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Substitute the variable by its reciprocal.
    pub fn reciprocal_substitution(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e, &c) in &self.terms {
            out.add_term(-e, c);
        }
        out
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut out = Complex64::new(0.0, 0.0);
        for (&e, &c) in &self.terms {
            out += x.powi(e as i32) * c as f64;
        }
        out
    }

    /// Exact value at the imaginary unit, as a Gaussian integer (re, im).
    pub fn eval_at_i(&self) -> (i128, i128) {
        let (mut re, mut im) = (0i128, 0i128);
        for (&e, &c) in &self.terms {
            match e.rem_euclid(4) {
                0 => re += c as i128,
                1 => im += c as i128,
                2 => re -= c as i128,
                _ => im -= c as i128,
            }
        }
        (re, im)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        *self.terms.get(&exp).unwrap_or(&0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "A")?,
                (1, e) => write!(f, "A^{e}")?,
                (m, 1) => write!(f, "{m}A")?,
                (m, e) => write!(f, "{m}A^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let d = LaurentPoly::delta();
        let sq = d.mul(&d);
        assert_eq!(sq.coeff(4), 1);
        assert_eq!(sq.coeff(0), 2);
        assert_eq!(sq.coeff(-4), 1);
        assert_eq!(d.pow(2), sq);
        assert!(d.add(&d.scale(-1)).is_zero());
    }

    #[test]
    fn eval_matches_exact_at_i() {
        let p = LaurentPoly::monomial(-3, 2).add(&LaurentPoly::monomial(2, 5));
        let (re, im) = p.eval_at_i();
        let v = p.eval(Complex64::new(0.0, 1.0));
        assert!((v.re - re as f64).abs() < 1e-12);
        assert!((v.im - im as f64).abs() < 1e-12);
        // i^-3 = i, so p(i) = 2i - 5
        assert_eq!((re, im), (-5, 2));
    }

    #[test]
    fn reciprocal_flips_exponents() {
        let p = LaurentPoly::monomial(3, 4).add(&LaurentPoly::monomial(-1, 7));
        let q = p.reciprocal_substitution();
        assert_eq!(q.coeff(-3), 4);
        assert_eq!(q.coeff(1), 7);
        assert_eq!(LaurentPoly::delta().reciprocal_substitution(), LaurentPoly::delta());
    }

    #[test]
    fn display_form() {
        let p = LaurentPoly::monomial(2, -1).add(&LaurentPoly::monomial(0, 3));
        assert_eq!(p.to_string(), "3 - A^2");
    }
}
