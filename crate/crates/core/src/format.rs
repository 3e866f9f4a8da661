/// Formats `x` with 17 significant digits in positional notation.
pub fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.16}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (16 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::sig17;

    #[test]
    fn seventeen_digits() {
        assert_eq!(sig17(0.25), "0.25000000000000000");
        assert_eq!(sig17(1.0), "1.0000000000000000");
        assert_eq!(sig17(12.5), "12.500000000000000");
        assert_eq!(sig17(0.0), "0.0000000000000000");
        let digits = |s: &str| {
            s.chars()
                .filter(|c| c.is_ascii_digit())
                .skip_while(|&c| c == '0')
                .count()
        };
        assert_eq!(digits(&sig17(0.1234)), 17);
        assert_eq!(digits(&sig17(3.0e-5)), 17);
    }
}
