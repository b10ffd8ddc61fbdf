//! Gamma function and the constants derived from it.

use std::f64::consts::PI;

/// Γ(1/3) to 30 significant digits.
pub const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_633_655_692_940_97;
/// Γ(2/3) to 30 significant digits.
pub const GAMMA_TWO_THIRDS: f64 = 1.354_117_939_426_400_416_945_288_028_15;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) by the Lanczos approximation (g = 7, nine terms), with the
/// reflection formula below 1/2. Relative error is a few parts in 1e-15
/// for moderate arguments.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reference_values() {
        // mpmath, 30 digits
        let cases = [
            (0.3, 2.991_568_987_687_590_744_642_160_675_2),
            (0.5, 1.772_453_850_905_516_027_298_167_483_34),
            (0.8, 1.164_229_713_725_303_323_743_269_143_4),
            (1.5, 0.886_226_925_452_758_013_649_083_741_671),
            (2.0, 1.0),
            (2.5, 1.329_340_388_179_137_020_473_625_612_51),
            (3.0, 2.0),
        ];
        for (x, want) in cases {
            assert!(rel(gamma(x), want) < 1e-14, "gamma({x}) = {}", gamma(x));
        }
    }

    #[test]
    fn embedded_constants_match_implementation() {
        assert!(rel(gamma(1.0 / 3.0), GAMMA_ONE_THIRD) < 1e-13);
        assert!(rel(gamma(2.0 / 3.0), GAMMA_TWO_THIRDS) < 1e-13);
        // reflection: Γ(1/3)Γ(2/3) = 2π/√3
        assert!(rel(GAMMA_ONE_THIRD * GAMMA_TWO_THIRDS, 2.0 * PI / 3f64.sqrt()) < 1e-15);
    }

    #[test]
    fn recurrence() {
        for x in [0.7, 1.3, 2.9, 5.5] {
            assert!(rel(gamma(x + 1.0), x * gamma(x)) < 1e-14);
        }
    }
}
