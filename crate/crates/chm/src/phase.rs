//! Unit-modulus complex numbers with exact rational-turn arithmetic.
//!
//! A [`Phase`] is a complex number of modulus one, stored either as an exact
//! number of turns `e^{2πi·p/q}` (a reduced rational in `[0, 1)`) or as a
//! floating-point angle `e^{iθ}` in radians. Products of rational turns stay
//! rational; anything touching a radians value degrades to radians.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Tolerance for classifying radians-valued phases as real or purely
/// imaginary. Every radians value this library constructs stays at least
/// ~0.04 away from the axes, so any tolerance well below that is safe.
pub const CLASS_TOLERANCE: f64 = 1e-9;

/// Classification of a unit-modulus value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryClass {
    /// `+1` or `-1`.
    Real,
    /// `+i` or `-i`.
    PurelyImaginary,
    /// Non-real and not `±i`.
    OtherNonReal,
}

impl EntryClass {
    pub fn is_real(self) -> bool {
        self == EntryClass::Real
    }

    pub fn is_non_real(self) -> bool {
        self != EntryClass::Real
    }
}

/// Error raised when a radians value lies within tolerance of two class
/// boundaries at once. Cannot occur for tolerances below 1/2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("phase angle {angle} lies within tolerance of two class boundaries")]
pub struct AmbiguousClassification {
    pub angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Repr {
    /// `e^{2πi·t}` with `t` reduced and in `[0, 1)`.
    Turn(Rational64),
    /// `e^{iθ}`, θ in radians. Not normalized.
    Radians(f64),
}

/// A unit-modulus complex number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase(Repr);

fn normalize_turn(t: Rational64) -> Rational64 {
    let one = Rational64::one();
    let mut r = t % one;
    if r.is_negative() {
        r += one;
    }
    r
}

impl Phase {
    /// `e^{2πi·num/den}`. Reduced and normalized into `[0, 1)`.
    ///
    /// Panics if `den == 0`.
    pub fn turn(num: i64, den: i64) -> Self {
        assert!(den != 0, "turn denominator must be nonzero");
        Phase(Repr::Turn(normalize_turn(Rational64::new(num, den))))
    }

    /// `e^{iθ}` for a floating-point angle in radians.
    ///
    /// Panics if the angle is not finite.
    pub fn radians(angle: f64) -> Self {
        assert!(angle.is_finite(), "radians angle must be finite");
        Phase(Repr::Radians(angle))
    }

    /// The k-th power of the primitive n-th root of unity, `e^{2πi·k/n}`.
    pub fn root_of_unity(k: i64, n: i64) -> Self {
        Phase::turn(k, n)
    }

    pub fn one() -> Self {
        Phase::turn(0, 1)
    }

    pub fn minus_one() -> Self {
        Phase::turn(1, 2)
    }

    /// The imaginary unit, `e^{2πi/4}`.
    pub fn i() -> Self {
        Phase::turn(1, 4)
    }

    pub fn minus_i() -> Self {
        Phase::turn(3, 4)
    }

    /// The primitive cube root of unity `e^{2πi/3}`.
    pub fn omega() -> Self {
        Phase::turn(1, 3)
    }

    pub fn omega2() -> Self {
        Phase::turn(2, 3)
    }

    /// The turn fraction, if this phase is stored exactly.
    pub fn as_turn(&self) -> Option<Rational64> {
        match self.0 {
            Repr::Turn(t) => Some(t),
            Repr::Radians(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.0, Repr::Turn(_))
    }

    /// The angle in radians. Exact turns convert via `2π·t`.
    pub fn angle(&self) -> f64 {
        match self.0 {
            Repr::Turn(t) => TAU * (*t.numer() as f64) / (*t.denom() as f64),
            Repr::Radians(a) => a,
        }
    }

    /// Product of two unit complex numbers. Turns add modulo one and stay
    /// exact; any radians operand makes the result radians.
    pub fn mul(&self, other: &Phase) -> Phase {
        match (&self.0, &other.0) {
            (Repr::Turn(a), Repr::Turn(b)) => Phase(Repr::Turn(normalize_turn(a + b))),
            _ => Phase(Repr::Radians(self.angle() + other.angle())),
        }
    }

    /// Complex conjugate: turn `t` maps to `(1-t) mod 1`, angle `θ` to `-θ`.
    pub fn conj(&self) -> Phase {
        match self.0 {
            Repr::Turn(t) => Phase(Repr::Turn(normalize_turn(-t))),
            Repr::Radians(a) => Phase(Repr::Radians(-a)),
        }
    }

    /// Integer power.
    pub fn pow(&self, k: i64) -> Phase {
        match self.0 {
            Repr::Turn(t) => Phase(Repr::Turn(normalize_turn(t * k))),
            Repr::Radians(a) => Phase(Repr::Radians(a * k as f64)),
        }
    }

    /// Exact decision for rational turns, tolerance decision for radians.
    pub fn classify(&self) -> Result<EntryClass, AmbiguousClassification> {
        match self.0 {
            Repr::Turn(t) => {
                let den = *t.denom();
                let num = *t.numer();
                Ok(if den == 1 || (den == 2 && num == 1) {
                    EntryClass::Real
                } else if den == 4 {
                    EntryClass::PurelyImaginary
                } else {
                    EntryClass::OtherNonReal
                })
            }
            Repr::Radians(a) => {
                let near_real = a.sin().abs() < CLASS_TOLERANCE;
                let near_imag = a.cos().abs() < CLASS_TOLERANCE;
                match (near_real, near_imag) {
                    (true, true) => Err(AmbiguousClassification { angle: a }),
                    (true, false) => Ok(EntryClass::Real),
                    (false, true) => Ok(EntryClass::PurelyImaginary),
                    (false, false) => Ok(EntryClass::OtherNonReal),
                }
            }
        }
    }

    /// Cosine/sine pair of the angle; modulus one to machine precision.
    pub fn to_complex(&self) -> (f64, f64) {
        match self.0 {
            // cos/sin straight from the turn fraction keeps common values
            // (quarter and half turns) exactly representable.
            Repr::Turn(t) => {
                let half = Rational64::new(1, 2);
                let quarter = Rational64::new(1, 4);
                if t.is_zero() {
                    (1.0, 0.0)
                } else if t == half {
                    (-1.0, 0.0)
                } else if t == quarter {
                    (0.0, 1.0)
                } else if t == half + quarter {
                    (0.0, -1.0)
                } else {
                    let a = self.angle();
                    (a.cos(), a.sin())
                }
            }
            Repr::Radians(a) => (a.cos(), a.sin()),
        }
    }

    /// Equality up to an absolute angle tolerance, with angles compared
    /// modulo 2π. Exact turns compare exactly.
    pub fn approx_eq(&self, other: &Phase, tol: f64) -> bool {
        match (&self.0, &other.0) {
            (Repr::Turn(a), Repr::Turn(b)) => a == b,
            _ => {
                let d = (self.angle() - other.angle()).rem_euclid(TAU);
                d.min(TAU - d) <= tol
            }
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase::mul(&self, &rhs)
    }
}

/// Canonical token grammar shared by all file formats and the CLI:
/// `1`, `-1`, `i`, `-i`, `w` (= `t(1/3)`), `w2` (= `t(2/3)`), `t(p/q)`,
/// `r(x)` with `x` a decimal angle in radians.
impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Turn(t) => {
                let (num, den) = (*t.numer(), *t.denom());
                match (num, den) {
                    (0, 1) => write!(f, "1"),
                    (1, 2) => write!(f, "-1"),
                    (1, 4) => write!(f, "i"),
                    (3, 4) => write!(f, "-i"),
                    (1, 3) => write!(f, "w"),
                    (2, 3) => write!(f, "w2"),
                    _ => write!(f, "t({num}/{den})"),
                }
            }
            Repr::Radians(a) => write!(f, "r({a:?})"),
        }
    }
}

/// Error for a token that does not match the phase grammar.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid phase token `{token}`")]
pub struct PhaseParseError {
    pub token: String,
}

impl FromStr for Phase {
    type Err = PhaseParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PhaseParseError { token: s.to_string() };
        match s {
            "1" => return Ok(Phase::one()),
            "-1" => return Ok(Phase::minus_one()),
            "i" => return Ok(Phase::i()),
            "-i" => return Ok(Phase::minus_i()),
            "w" => return Ok(Phase::omega()),
            "w2" => return Ok(Phase::omega2()),
            _ => {}
        }
        if let Some(body) = s.strip_prefix("t(").and_then(|b| b.strip_suffix(')')) {
            let (num, den) = body.split_once('/').ok_or_else(bad)?;
            let num: i64 = num.parse().map_err(|_| bad())?;
            let den: i64 = den.parse().map_err(|_| bad())?;
            if den <= 0 {
                return Err(bad());
            }
            return Ok(Phase::turn(num, den));
        }
        if let Some(body) = s.strip_prefix("r(").and_then(|b| b.strip_suffix(')')) {
            let angle: f64 = body.parse().map_err(|_| bad())?;
            if !angle.is_finite() {
                return Err(bad());
            }
            return Ok(Phase::radians(angle));
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turn_normalization() {
        assert_eq!(Phase::turn(5, 4), Phase::turn(1, 4));
        assert_eq!(Phase::turn(-1, 4), Phase::turn(3, 4));
        assert_eq!(Phase::turn(2, 4), Phase::turn(1, 2));
        assert_eq!(Phase::turn(6, 3), Phase::one());
        assert_eq!(Phase::turn(1, -3), Phase::turn(2, 3));
    }

    #[test]
    fn mul_stays_exact() {
        assert_eq!(Phase::i() * Phase::i(), Phase::minus_one());
        assert_eq!(Phase::omega() * Phase::minus_one(), Phase::turn(5, 6));
        let mixed = Phase::radians(1.0) * Phase::minus_one();
        assert!(!mixed.is_exact());
        assert_eq!(mixed.angle(), 1.0 + std::f64::consts::PI);
    }

    #[test]
    fn conjugation() {
        assert_eq!(Phase::one().conj(), Phase::one());
        assert_eq!(Phase::i().conj(), Phase::minus_i());
        assert_eq!(Phase::omega().conj(), Phase::omega2());
        assert_eq!(Phase::radians(2.5).conj(), Phase::radians(-2.5));
    }

    #[test]
    fn classification_exact() {
        assert_eq!(Phase::one().classify().unwrap(), EntryClass::Real);
        assert_eq!(Phase::minus_one().classify().unwrap(), EntryClass::Real);
        assert_eq!(Phase::i().classify().unwrap(), EntryClass::PurelyImaginary);
        assert_eq!(Phase::minus_i().classify().unwrap(), EntryClass::PurelyImaginary);
        assert_eq!(Phase::omega().classify().unwrap(), EntryClass::OtherNonReal);
        assert_eq!(Phase::turn(1, 8).classify().unwrap(), EntryClass::OtherNonReal);
    }

    #[test]
    fn classification_radians() {
        use std::f64::consts::{FRAC_PI_2, PI};
        assert_eq!(Phase::radians(PI).classify().unwrap(), EntryClass::Real);
        assert_eq!(Phase::radians(-FRAC_PI_2).classify().unwrap(), EntryClass::PurelyImaginary);
        assert_eq!(Phase::radians(1.0).classify().unwrap(), EntryClass::OtherNonReal);
        assert_eq!(Phase::radians(PI + 5e-10).classify().unwrap(), EntryClass::Real);
    }

    #[test]
    fn to_complex_values() {
        assert_eq!(Phase::one().to_complex(), (1.0, 0.0));
        assert_eq!(Phase::minus_one().to_complex(), (-1.0, 0.0));
        assert_eq!(Phase::i().to_complex(), (0.0, 1.0));
        let (re, im) = Phase::omega().to_complex();
        assert!((re + 0.5).abs() < 1e-15);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn token_round_trip() {
        for tok in ["1", "-1", "i", "-i", "w", "w2", "t(5/8)", "t(1/6)", "r(1.25)", "r(-2.5)"] {
            let p: Phase = tok.parse().unwrap();
            assert_eq!(p.to_string(), tok, "canonical token must round-trip");
        }
        // non-canonical spellings parse to the canonical value
        assert_eq!("t(1/4)".parse::<Phase>().unwrap(), Phase::i());
        assert_eq!("t(9/12)".parse::<Phase>().unwrap(), Phase::minus_i());
    }

    #[test]
    fn rejects_bad_tokens() {
        for tok in ["", "2", "x", "w3", "t(1/0)", "t(1)", "t(a/b)", "r()", "r(nan)", "r(inf)", "ii", "- 1"] {
            assert!(tok.parse::<Phase>().is_err(), "should reject `{tok}`");
        }
    }

    #[test]
    fn ambiguous_classification_unreachable_at_default_tolerance() {
        for k in 0..1000 {
            let p = Phase::radians(k as f64 * 0.01);
            assert!(p.classify().is_ok());
        }
    }
}
