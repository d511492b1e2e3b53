use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Default characteristic used for randomized genericity checks.
pub const DEFAULT_PRIME: u64 = 10007;

/// Exact scalar field. Elements carry no context, so every operation goes
/// through the field value (this is what lets the prime be chosen at runtime).
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Uniform sample. Only finite fields support this.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Self::Elem, LinalgError>;
    fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Self::Elem, LinalgError>;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, LinalgError>;
    fn spec(&self) -> FieldSpec;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// Integers modulo a prime `p`, elements kept in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u64, LinalgError> {
        Ok(rng.gen_range(0..self.p))
    }
    fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u64, LinalgError> {
        Ok(rng.gen_range(1..self.p))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, LinalgError> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num = self.parse(num)?;
            let den = self.parse(den)?;
            let inv = self
                .inv(&den)
                .ok_or_else(|| LinalgError::Parse(format!("zero denominator in {s:?}")))?;
            return Ok(self.mul(&num, &inv));
        }
        let v: i64 = s
            .parse()
            .map_err(|_| LinalgError::Parse(format!("not an integer: {s:?}")))?;
        Ok(self.from_i64(v))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
}

/// Exact rationals backed by arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sample<R: Rng + ?Sized>(&self, _rng: &mut R) -> Result<BigRational, LinalgError> {
        Err(LinalgError::SamplingUnsupported)
    }
    fn sample_nonzero<R: Rng + ?Sized>(&self, _rng: &mut R) -> Result<BigRational, LinalgError> {
        Err(LinalgError::SamplingUnsupported)
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, LinalgError> {
        let s = s.trim();
        let bad = || LinalgError::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(LinalgError::Parse(format!("zero denominator in {s:?}")));
                }
                let (n, d) = if d.is_negative() { (-n, -d) } else { (n, d) };
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
}

/// Field selector used on the command line and in reports: `p:10007` or `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(FieldSpec::Rational);
        }
        let digits = s.strip_prefix("p:").unwrap_or(s);
        let p: u64 = digits
            .parse()
            .map_err(|_| LinalgError::Parse(format!("bad field spec {s:?}, expected p:<prime> or Q")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::default();
        for a in 1..200u64 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(matches!(PrimeField::new(10005), Err(LinalgError::NotPrime(10005))));
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn parse_and_format_rationals() {
        let q = Rationals;
        let a = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&a), "-3/2");
        assert_eq!(q.format(&q.parse("7").unwrap()), "7");
        assert!(q.parse("1/0").is_err());
        let p = PrimeField::new(7).unwrap();
        assert_eq!(p.parse("1/2").unwrap(), 4);
        assert_eq!(p.parse("-1").unwrap(), 6);
    }

    #[test]
    fn field_spec_round_trip() {
        assert_eq!("p:10007".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(10007));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert!("p:12".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(13).to_string(), "p:13");
    }

    #[test]
    fn rationals_refuse_sampling() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(Rationals.sample(&mut rng), Err(LinalgError::SamplingUnsupported)));
    }
}
