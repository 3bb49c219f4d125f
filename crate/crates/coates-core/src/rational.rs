use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

/// Exact fraction over arbitrary-precision integers.
///
/// `num_rational::BigRational` already maintains the canonical form this
/// crate relies on: the denominator is always positive and the fraction is
/// fully reduced after every operation, so signs are exact.
pub type Rational = num_rational::BigRational;

/// Parses a token of the form `[+-]?(digits | digits.digits | digits/digits)`.
///
/// Decimal tokens are converted exactly (`"0.25"` becomes `1/4`); fraction
/// tokens are canonicalized (`"-8/2"` becomes `-4`). The denominator of a
/// fraction token must be a positive integer without a leading zero.
pub fn parse_rational(token: &str) -> Result<Rational, Error> {
    let malformed = || Error::MalformedRational(token.to_string());

    let (sign, body) = match token.as_bytes().first() {
        Some(b'+') => (1, &token[1..]),
        Some(b'-') => (-1, &token[1..]),
        Some(_) => (1, token),
        None => return Err(malformed()),
    };

    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());

    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(malformed());
        }
        if den.bytes().all(|b| b == b'0') {
            return Err(Error::ZeroDenominator(token.to_string()));
        }
        if den.starts_with('0') {
            return Err(malformed());
        }
        Rational::new(parse_digits(num), parse_digits(den))
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        if !digits(int_part) || !digits(frac_part) {
            return Err(malformed());
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let numer = parse_digits(int_part) * &scale + parse_digits(frac_part);
        Rational::new(numer, scale)
    } else {
        if !digits(body) {
            return Err(malformed());
        }
        Rational::from_integer(parse_digits(body))
    };

    Ok(if sign < 0 { -value } else { value })
}

fn parse_digits(s: &str) -> BigInt {
    s.parse().expect("digit-checked string parses")
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn rational_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Exact sign of a rational: -1, 0, or +1.
pub fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.numer().sign() == num_bigint::Sign::Minus {
        -1
    } else {
        1
    }
}
