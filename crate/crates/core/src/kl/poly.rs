use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer polynomial in `q`, coefficients by degree with no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolynomialQ {
    coeffs: Vec<i64>,
}

impl PolynomialQ {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |a, &c| a.checked_add(c).expect("coefficient overflow"))
    }

    /// `self + c · q^k · other`.
    pub fn add_scaled(&self, other: &Self, c: i64, k: usize) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len() + k);
        let mut out = self.coeffs.clone();
        out.resize(len, 0);
        for (d, &a) in other.coeffs.iter().enumerate() {
            let t = a.checked_mul(c).expect("coefficient overflow");
            out[d + k] = out[d + k].checked_add(t).expect("coefficient overflow");
        }
        Self::from_coeffs(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, 1, 0)
    }
}

impl fmt::Display for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(PolynomialQ::from_coeffs(vec![1, 0, 1]).to_string(), "1 + q^2");
        assert_eq!(PolynomialQ::from_coeffs(vec![1, 2, 0, 0]).to_string(), "1 + 2q");
        assert_eq!(PolynomialQ::from_coeffs(vec![0, -1]).to_string(), "-q");
        assert_eq!(PolynomialQ::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let a = PolynomialQ::from_coeffs(vec![1, 1]);
        let b = a.add_scaled(&PolynomialQ::one(), -1, 1);
        assert_eq!(b, PolynomialQ::one());
        assert_eq!(a.eval_at_one(), 2);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(serde_json::to_string(&a).unwrap(), "[1,1]");
    }
}
