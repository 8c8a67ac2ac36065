//! Exact rationals at the CLI boundary: "num/den" strings (or plain
//! integers) so the container module's exact-arithmetic contract survives
//! argument parsing.

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator {num:?}"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator {den:?}"))?;
    if den == BigInt::from(0) {
        return Err("rational denominator must be nonzero".to_string());
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/3").unwrap().to_string(), "1/3");
        assert_eq!(parse_rational("6/4").unwrap().to_string(), "3/2");
        assert_eq!(parse_rational("5").unwrap().to_string(), "5");
        assert_eq!(parse_rational("0").unwrap().to_string(), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }
}
