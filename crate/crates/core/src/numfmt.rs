//! Fixed-width float formatting shared by reports and CSV output.

/// Formats a float with 17 significant digits in scientific notation.
/// 17 digits round-trip every f64, so equal values always print equal bytes.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Formats a coordinate slice as `(c0, c1, ...)` with 17-digit entries.
pub fn fmt_coords(coords: &[f64]) -> String {
    let inner: Vec<String> = coords.iter().map(|c| fmt_g17(*c)).collect();
    format!("({})", inner.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_are_stable_and_roundtrip() {
        assert_eq!(fmt_g17(5.0), "5.0000000000000000e0");
        assert_eq!(fmt_g17(-0.5), "-5.0000000000000000e-1");
        for x in [std::f64::consts::PI, 1.0 / 3.0, 1e-300, -2.5e17] {
            let back: f64 = fmt_g17(x).parse().unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn coords_join() {
        assert_eq!(
            fmt_coords(&[1.0, 2.0]),
            "(1.0000000000000000e0, 2.0000000000000000e0)"
        );
    }
}
