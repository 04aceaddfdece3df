//! Independent reference arithmetic for the integration tests.
//!
//! Everything here re-derives the fixed-point operations from their
//! mathematical definitions using `i128` closed forms, rather than the staged
//! register shapes the library uses. The two implementations should agree
//! bit-for-bit on every input; the differential tests in `properties.rs` and
//! the acceptance gate check exactly that.

#![allow(dead_code)]

/// Scaled points per printer's point.
pub const UNITY: i128 = 65536;

/// Largest register value: 2^30 - 1.
pub const MAX_DIMEN: i128 = 0x3FFF_FFFF;

/// Mirror of the library's arithmetic error cases, kept structurally separate
/// so a bug in one enum cannot hide in the other.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrErr {
    Overflow,
    DivisionByZero,
    DegenerateDivisor,
}

/// Rounds a decimal digit string to a binary fraction over 65536.
///
/// Closed form: with `D` the digits read as an integer and `k` their count,
/// the value is `round_half_up(D * 65536 / 10^k)`, computed exactly as
/// `(floor(D * 131072 / 10^k) + 1) div 2`. Only seventeen digits matter.
pub fn or_round_decimals(digits: &[u8]) -> u32 {
    let take = digits.len().min(17);
    let mut numer: i128 = 0;
    for &d in &digits[..take] {
        assert!(d < 10, "digit out of range");
        numer = numer * 10 + i128::from(d);
    }
    let a = (numer * 131_072) / 10_i128.pow(take as u32);
    ((a + 1) / 2) as u32
}

/// Renders a scaled value the way the register printer does: integer part,
/// a point, then the shortest fraction that scans back to the same value
/// (at least one digit, at most five, fifth digit rounded).
pub fn or_print_scaled(sp: i32) -> String {
    let mag = i128::from(sp).abs();
    let mut digits: Vec<u8> = Vec::with_capacity(5);
    let mut s = 10 * (mag % UNITY) + 5;
    let mut tolerance: i128 = 10;
    loop {
        if tolerance > UNITY {
            // Fifth digit: replace the +5 probe bias with true rounding.
            s += 32768 - 50000;
        }
        digits.push((s / UNITY) as u8);
        s = 10 * (s % UNITY);
        tolerance *= 10;
        if s <= tolerance {
            break;
        }
    }
    assert!(digits.len() <= 5, "fraction never needs a sixth digit");
    assert_eq!(
        i128::from(or_round_decimals(&digits)),
        mag % UNITY,
        "rendered fraction must scan back to the same value",
    );
    let mut out = String::new();
    if sp < 0 {
        out.push('-');
    }
    out.push_str(&(mag / UNITY).to_string());
    out.push('.');
    for d in digits {
        out.push((b'0' + d) as char);
    }
    out
}

/// A decimal numeral split into sign, integer digits, and fraction digits.
/// Panics on malformed text; the oracle only ever sees text it generated or
/// fixture constants.
fn split_numeral(text: &str) -> (bool, i128, u32) {
    let (neg, rest) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    let (int_text, frac_text) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    let mut int: i128 = 0;
    for b in int_text.bytes() {
        assert!(b.is_ascii_digit(), "bad numeral {text:?}");
        int = int * 10 + i128::from(b - b'0');
    }
    let frac_digits: Vec<u8> = frac_text
        .bytes()
        .map(|b| {
            assert!(b.is_ascii_digit(), "bad numeral {text:?}");
            b - b'0'
        })
        .collect();
    assert!(!int_text.is_empty() || !frac_digits.is_empty(), "no digits in {text:?}");
    (neg, int, or_round_decimals(&frac_digits))
}

/// Parses decimal text as a dimension in points: `sign * (int * 65536 + frac)`.
pub fn or_dim_pt(text: &str) -> Result<i32, OrErr> {
    let (neg, int, frac) = split_numeral(text);
    let mag = int * UNITY + i128::from(frac);
    if mag > MAX_DIMEN {
        return Err(OrErr::Overflow);
    }
    Ok(if neg { -(mag as i32) } else { mag as i32 })
}

/// Parses decimal text as a dimension in big points through the exact ratio
/// 7227/7200, folding the integer remainder into the fraction stage.
pub fn or_dim_bp(text: &str) -> Result<i32, OrErr> {
    let (neg, int, frac) = split_numeral(text);
    let whole = int * 7227;
    let folded = (7227 * i128::from(frac) + UNITY * (whole % 7200)) / 7200;
    let mag = (whole / 7200) * UNITY + folded;
    if mag > MAX_DIMEN {
        return Err(OrErr::Overflow);
    }
    Ok(if neg { -(mag as i32) } else { mag as i32 })
}

/// Rational form of the big-point conversion for whole numbers:
/// `floor(n * 7227 * 65536 / 7200)`. For integer input the staged conversion
/// collapses to this single floor, which makes it an independent cross-check.
pub fn or_rational_bp(n: i128) -> i128 {
    (n * 7227 * UNITY).div_euclid(7200)
}

/// Truncated fixed-point product `sign * floor(|a| * |b| / 65536)`.
///
/// The library routes this through printed text (render `a`, scan it back,
/// apply as a coefficient). Because rendering is value-exact, the composite
/// equals this one-line closed form; comparing the two is what proves the
/// round trip never drops a scaled point.
pub fn or_mult(a: i32, b: i32) -> Result<i32, OrErr> {
    let mag = (i128::from(a).abs() * i128::from(b).abs()) / UNITY;
    if mag > MAX_DIMEN {
        return Err(OrErr::Overflow);
    }
    let neg = (a < 0) ^ (b < 0);
    Ok(if neg { -(mag as i32) } else { mag as i32 })
}

/// Approximate reciprocal `8 * (2^29 div d)`, truncating.
pub fn or_invert(d: i32) -> Result<i32, OrErr> {
    if d == 0 {
        return Err(OrErr::DivisionByZero);
    }
    let r = 8 * ((1_i128 << 29) / i128::from(d));
    if r.abs() > MAX_DIMEN {
        return Err(OrErr::Overflow);
    }
    Ok(r as i32)
}

/// Staged ratio scaling `x * y / z`, replayed stage by stage:
/// divide both `x` and `z` by 100 (truncating), invert the reduced divisor,
/// then apply the two truncated products in order.
pub fn or_rescale(x: i32, y: i32, z: i32) -> Result<i32, OrErr> {
    let t = z / 100;
    if t == 0 {
        return Err(OrErr::DegenerateDivisor);
    }
    let i = or_invert(t)?;
    let p = or_mult(x / 100, y)?;
    or_mult(p, i)
}

/// Permille scaling `((d div 1280) * (s div 5120)) div 10` with the product
/// range-checked before the final division.
pub fn or_scale(d: i32, s: i32) -> Result<i32, OrErr> {
    let product = i128::from(d / 1280) * i128::from(s / 5120);
    if product.abs() > MAX_DIMEN {
        return Err(OrErr::Overflow);
    }
    Ok((product / 10) as i32)
}

/// Driver escape numeral: the scale text read as points, divided down, and
/// re-rendered. `divisor` is 1000 for unit factors and 10 for percentages.
pub fn or_scale_numeral(scale_text: &str, divisor: i32) -> String {
    let sp = or_dim_pt(scale_text).expect("fixture scale fits a register");
    or_print_scaled(sp / divisor)
}

/// Driver escape numeral for rescaled spans: `span * dim(S pt) / 1000pt`,
/// rendered. Used for drivers that emit absolute scaled widths and heights.
pub fn or_rescaled_span(span_sp: i32, scale_text: &str) -> String {
    let s = or_dim_pt(scale_text).expect("fixture scale fits a register");
    or_print_scaled(or_rescale(span_sp, s, 65_536_000).expect("fixture span in range"))
}

/// Everything before the first `.` of a numeral, as the drivers that take
/// integer magnification arguments truncate it.
pub fn or_integer_prefix(text: &str) -> &str {
    match text.split_once('.') {
        Some((head, _)) => head,
        None => text,
    }
}

/// Hand-computed anchor values for the oracle itself. The differential
/// tests lean on the oracle, so these few fixed points keep it honest;
/// each integration target that includes this module can call it.
pub fn assert_oracle_anchors() {
    assert_eq!(or_round_decimals(&[5]), 32768);
    assert_eq!(or_round_decimals(&[1, 8, 5, 5, 5]), 12160);
    assert_eq!(or_print_scaled(0), "0.0");
    assert_eq!(or_print_scaled(65536), "1.0");
    assert_eq!(or_print_scaled(-26214), "-0.4");
    assert_eq!(or_print_scaled(3_288_960), "50.18555");
    assert_eq!(or_dim_pt("16383.99998"), Ok(0x3FFF_FFFF));
    assert_eq!(or_dim_bp("100"), Ok(6_578_176));
    assert_eq!(or_dim_bp("72"), Ok(4_736_286));
    assert_eq!(or_rational_bp(100), 6_578_176);
    assert_eq!(or_mult(32768, 6_578_176), Ok(3_289_088));
    assert_eq!(or_invert(655), Ok(6_557_200));
    assert_eq!(or_rescale(6_578_176, 65_536_000, 65_536_000), Ok(6_576_494));
    assert_eq!(or_scale(6_578_176, 32_768_000), Ok(3_288_960));
}
