//! Fixed-point dimension arithmetic.
//!
//! All layout math in this crate runs on integer *scaled points*: 65536
//! scaled points (sp) make one printer's point (pt). Every operation here is
//! exact integer arithmetic with truncating division, so results are
//! bit-identical across platforms. Intermediates are computed in wide
//! integers; a value only has to fit the register range (|d| <= [`ScaledDim::MAX_DIMEN`])
//! at the points where a classic typesetting engine would store it.
//!
//! The quirkiest operation is [`ScaledDim::mult`]: the left operand is first
//! flattened to its printed decimal form and then reapplied as a coefficient.
//! That round trip through text is deliberate; the staged scaling pipeline in
//! [`crate::layout`] depends on its exact rounding profile.

use std::fmt;
use std::str::FromStr;

/// One printer's point, in scaled points.
pub const UNITY: i32 = 65536;

/// A dimension in scaled points, restricted to the register range
/// `-MAX_DIMEN ..= MAX_DIMEN`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScaledDim(i32);

/// Errors from dimension arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    /// The result left the register range (`|d| > MAX_DIMEN`).
    #[error("dimension too large")]
    Overflow,
    /// Inversion of a zero dimension.
    #[error("division by zero")]
    DivisionByZero,
    /// A rescale divisor smaller than 100sp in magnitude; the staged
    /// computation divides it by 100 first and cannot proceed from zero.
    #[error("rescale divisor smaller than 100sp")]
    DegenerateDivisor,
}

impl ScaledDim {
    /// Largest representable dimension, 2^30 - 1 sp (a hair under 16384pt).
    pub const MAX_DIMEN: i32 = 0x3FFF_FFFF;

    pub const ZERO: ScaledDim = ScaledDim(0);

    /// One point.
    pub const ONE_PT: ScaledDim = ScaledDim(UNITY);

    /// Wraps a raw scaled-point count.
    ///
    /// Panics if `sp` is outside the register range; use
    /// [`ScaledDim::try_from_sp`] for checked construction from wide values.
    pub const fn from_sp(sp: i32) -> ScaledDim {
        assert!(sp.unsigned_abs() <= ScaledDim::MAX_DIMEN as u32);
        ScaledDim(sp)
    }

    /// Checked construction from a wide intermediate.
    pub fn try_from_sp(sp: i64) -> Result<ScaledDim, ArithError> {
        if sp.unsigned_abs() > ScaledDim::MAX_DIMEN as u64 {
            Err(ArithError::Overflow)
        } else {
            Ok(ScaledDim(sp as i32))
        }
    }

    /// The raw scaled-point count.
    pub const fn sp(self) -> i32 {
        self.0
    }

    pub fn try_add(self, rhs: ScaledDim) -> Result<ScaledDim, ArithError> {
        ScaledDim::try_from_sp(i64::from(self.0) + i64::from(rhs.0))
    }

    pub fn try_sub(self, rhs: ScaledDim) -> Result<ScaledDim, ArithError> {
        ScaledDim::try_from_sp(i64::from(self.0) - i64::from(rhs.0))
    }

    /// Integer division truncating toward zero, as register division does.
    ///
    /// Panics if `n` is zero.
    pub const fn div(self, n: i32) -> ScaledDim {
        ScaledDim(self.0 / n)
    }

    /// Multiplies `rhs` by this dimension's *printed* decimal value.
    ///
    /// `self` is rendered to text and re-read as a decimal coefficient, then
    /// applied with [`DecimalConstant::times`]. Rendering is value-exact, so
    /// this equals the truncated product `sign * floor(|self|*|rhs| / 65536)`,
    /// but the operational route through text is what fixes the overflow
    /// points and keeps the staged pipeline honest.
    pub fn mult(self, rhs: ScaledDim) -> Result<ScaledDim, ArithError> {
        let flat: DecimalConstant = self
            .to_string()
            .parse()
            .expect("rendered decimals always re-parse");
        flat.times(rhs)
    }

    /// Approximate reciprocal: `8 * (2^29 / d)` with truncating division,
    /// scaled so that `ScaledDim::ONE_PT.invert()` is exactly one point.
    ///
    /// Overflows for `0 < |d| <= 4`sp; errors on zero.
    pub fn invert(self) -> Result<ScaledDim, ArithError> {
        if self.0 == 0 {
            return Err(ArithError::DivisionByZero);
        }
        ScaledDim::try_from_sp(8 * (536_870_912_i64 / i64::from(self.0)))
    }

    /// Staged ratio scaling: approximately `self * numer / denom`.
    ///
    /// The exact stage order is observable in the result and must not be
    /// reassociated: both divisions by 100 truncate, the reciprocal of
    /// `denom / 100` is formed with [`ScaledDim::invert`], and the two
    /// products run through [`ScaledDim::mult`] (so each left operand is
    /// flattened to its printed decimal on the way).
    pub fn rescale(self, numer: ScaledDim, denom: ScaledDim) -> Result<ScaledDim, ArithError> {
        let t = denom.0 / 100;
        if t == 0 {
            return Err(ArithError::DegenerateDivisor);
        }
        let x = ScaledDim(self.0 / 100);
        let i = ScaledDim(t).invert()?;
        let p = x.mult(numer)?;
        p.mult(i)
    }

    /// Applies a scale factor expressed as a dimension whose point value is
    /// permille: `the_scale = 1000pt` is unit scale, `500pt` halves.
    ///
    /// Computed as `((d / 1280) * (the_scale / 5120)) / 10` with truncating
    /// divisions. The multiply lands in a dimension register, so the product
    /// itself must already fit `MAX_DIMEN`, before the final division by 10.
    pub fn scale(self, the_scale: ScaledDim) -> Result<ScaledDim, ArithError> {
        let q = i64::from(self.0 / 1280);
        let factor = i64::from(the_scale.0 / 5120);
        let product = q * factor;
        if product.unsigned_abs() > ScaledDim::MAX_DIMEN as u64 {
            return Err(ArithError::Overflow);
        }
        Ok(ScaledDim((product / 10) as i32))
    }
}

impl std::ops::Neg for ScaledDim {
    type Output = ScaledDim;
    fn neg(self) -> ScaledDim {
        ScaledDim(-self.0)
    }
}

/// Renders the dimension as a decimal numeral with the shortest fraction that
/// scans back to exactly the same scaled-point count.
///
/// There is always at least one fraction digit, so `0` prints as `0.0` and one
/// point prints as `1.0`. Negative values get a leading `-` and are otherwise
/// rendered by magnitude.
impl fmt::Display for ScaledDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = i64::from(self.0);
        if s < 0 {
            f.write_str("-")?;
            s = -s;
        }
        write!(f, "{}.", s / i64::from(UNITY))?;
        let mut s = 10 * (s % i64::from(UNITY)) + 5;
        let mut delta = 10_i64;
        loop {
            if delta > i64::from(UNITY) {
                // Round the last digit.
                s += 32768 - 50000;
            }
            write!(f, "{}", s / i64::from(UNITY))?;
            s = 10 * (s % i64::from(UNITY));
            delta *= 10;
            if s <= delta {
                return Ok(());
            }
        }
    }
}

/// Units accepted for dimension text.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Unit {
    /// Printer's point: 65536sp.
    Pt,
    /// PostScript ("big") point: 72bp = 72.27pt, applied as the exact ratio
    /// 7227/7200.
    Bp,
}

/// Sign of a scanned decimal constant.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A scanned decimal numeral: sign, integer part, and the fraction rounded to
/// a binary fraction `frac/65536`.
///
/// `frac` normally lies in `0..=65535`; a run of seventeen nines rounds all
/// the way up to 65536, which downstream arithmetic absorbs as a carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalConstant {
    pub sign: Sign,
    pub int_part: u64,
    pub frac: u32,
}

/// Errors from scanning a decimal constant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecimalParseError {
    /// The text has no digits at all (empty, or just a sign or point).
    #[error("no digits in decimal constant")]
    NoDigits,
    /// A character outside `[+-][0-9][.]` appeared at the given byte offset.
    #[error("unexpected character {ch:?} at byte {pos} of decimal constant")]
    UnexpectedChar { ch: char, pos: usize },
}

/// Rounds decimal fraction digits to a binary fraction over 65536.
///
/// Runs Horner's scheme from the last digit inward, keeping one extra binary
/// bit (`a` accumulates over 131072) and rounding it away at the end. Only
/// the first seventeen digits can influence the result.
fn round_decimals(digits: &[u8]) -> u32 {
    let mut a: u64 = 0;
    for &d in digits.iter().rev() {
        a = (a + u64::from(d) * 131_072) / 10;
    }
    ((a + 1) / 2) as u32
}

impl FromStr for DecimalConstant {
    type Err = DecimalParseError;

    /// Scans `[sign] digits [. digits]`. At least one digit must be present
    /// (on either side of the point); nothing may follow the numeral. The
    /// integer part saturates on absurd lengths and is range-checked when the
    /// constant is turned into a dimension. Fraction digits past the
    /// seventeenth are consumed but cannot affect the rounding.
    fn from_str(text: &str) -> Result<DecimalConstant, DecimalParseError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let sign = match bytes.first() {
            Some(b'-') => {
                pos = 1;
                Sign::Minus
            }
            Some(b'+') => {
                pos = 1;
                Sign::Plus
            }
            _ => Sign::Plus,
        };
        let mut int_part: u64 = 0;
        let mut digit_count = 0usize;
        while let Some(d) = bytes.get(pos).filter(|b| b.is_ascii_digit()) {
            int_part = int_part
                .saturating_mul(10)
                .saturating_add(u64::from(d - b'0'));
            digit_count += 1;
            pos += 1;
        }
        let mut frac_digits: Vec<u8> = Vec::new();
        if bytes.get(pos) == Some(&b'.') {
            pos += 1;
            while let Some(d) = bytes.get(pos).filter(|b| b.is_ascii_digit()) {
                if frac_digits.len() < 17 {
                    frac_digits.push(d - b'0');
                }
                digit_count += 1;
                pos += 1;
            }
        }
        if pos < bytes.len() {
            let ch = text[pos..].chars().next().expect("offset is on a boundary");
            return Err(DecimalParseError::UnexpectedChar { ch, pos });
        }
        if digit_count == 0 {
            return Err(DecimalParseError::NoDigits);
        }
        Ok(DecimalConstant {
            sign,
            int_part,
            frac: round_decimals(&frac_digits),
        })
    }
}

impl DecimalConstant {
    /// Interprets the constant as a dimension in the given unit.
    ///
    /// Points attach the fraction directly: `sp = int * 65536 + frac`. Big
    /// points convert through the exact ratio 7227/7200, folding the division
    /// remainder of the integer part into the fraction:
    ///
    /// ```text
    /// q  = (int * 7227) div 7200        r = (int * 7227) mod 7200
    /// f' = (7227 * frac + 65536 * r) div 7200
    /// sp = sign * (q * 65536 + f')
    /// ```
    pub fn to_dim(&self, unit: Unit) -> Result<ScaledDim, ArithError> {
        let int = self.int_part as i128;
        let frac = i128::from(self.frac);
        let magnitude = match unit {
            Unit::Pt => int * 65536 + frac,
            Unit::Bp => {
                let q = (int * 7227) / 7200;
                let r = (int * 7227) % 7200;
                let f = (7227 * frac + 65536 * r) / 7200;
                q * 65536 + f
            }
        };
        if magnitude > i128::from(ScaledDim::MAX_DIMEN) {
            return Err(ArithError::Overflow);
        }
        let magnitude = magnitude as i64;
        Ok(ScaledDim(match self.sign {
            Sign::Plus => magnitude as i32,
            Sign::Minus => -magnitude as i32,
        }))
    }

    /// Applies the constant as a coefficient to a dimension:
    /// `sign * sign(v) * (int * |v| + floor(|v| * frac / 65536))`.
    ///
    /// The integer part multiplies exactly; the fraction contributes a
    /// truncated binary-fraction share of `|v|`.
    pub fn times(&self, v: ScaledDim) -> Result<ScaledDim, ArithError> {
        let av = i128::from(v.0.unsigned_abs());
        let magnitude = self.int_part as i128 * av + (av * i128::from(self.frac)) / 65536;
        if magnitude > i128::from(ScaledDim::MAX_DIMEN) {
            return Err(ArithError::Overflow);
        }
        let negative = matches!(self.sign, Sign::Minus) ^ (v.0 < 0);
        let magnitude = magnitude as i32;
        Ok(ScaledDim(if negative { -magnitude } else { magnitude }))
    }
}

/// Errors from parsing unit-suffixed dimension text such as `2.5pt` or `4bp`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimensionParseError {
    #[error("dimension {0:?} must end in a pt or bp unit")]
    MissingUnit(String),
    #[error("bad decimal in dimension: {0}")]
    BadDecimal(#[from] DecimalParseError),
    #[error("{0}")]
    Arith(#[from] ArithError),
}

/// Parses `⟨decimal⟩pt` or `⟨decimal⟩bp` text into a dimension.
///
/// A single space is tolerated between the numeral and the unit.
pub fn parse_dimension(text: &str) -> Result<ScaledDim, DimensionParseError> {
    let text = text.trim();
    let (number, unit) = if let Some(number) = text.strip_suffix("pt") {
        (number, Unit::Pt)
    } else if let Some(number) = text.strip_suffix("bp") {
        (number, Unit::Bp)
    } else {
        return Err(DimensionParseError::MissingUnit(text.to_string()));
    };
    let constant: DecimalConstant = number.trim_end_matches(' ').parse()?;
    Ok(constant.to_dim(unit)?)
}
