//! Standard normal and bivariate normal distribution functions.
//!
//! The bivariate CDF follows Genz's refinement of the Drezner–Wesolowsky
//! Gauss–Legendre scheme (absolute error around 1e-15).

use std::f64::consts::{PI, SQRT_2};

use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf::erfc;

pub fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

pub fn norm_quantile(p: f64) -> f64 {
    Normal::standard().inverse_cdf(p)
}

const W6: [f64; 3] = [0.1713244923791705, 0.3607615730481384, 0.4679139345726904];
const X6: [f64; 3] = [0.9324695142031522, 0.6612093864662647, 0.238_619_186_083_197];
const W12: [f64; 6] = [
    0.04717533638651177,
    0.1069393259953183,
    0.1600783285433464,
    0.2031674267230659,
    0.2334925365383547,
    0.2491470458134029,
];
const X12: [f64; 6] = [
    0.9815606342467191,
    0.904_117_256_370_475,
    0.769_902_674_194_305,
    0.5873179542866171,
    0.3678314989981802,
    0.1252334085114692,
];
const W20: [f64; 10] = [
    0.01761400713915212,
    0.04060142980038694,
    0.06267204833410906,
    0.08327674157670475,
    0.1019301198172404,
    0.1181945319615184,
    0.1316886384491766,
    0.1420961093183821,
    0.1491729864726037,
    0.1527533871307259,
];
const X20: [f64; 10] = [
    0.9931285991850949,
    0.9639719272779138,
    0.912_234_428_251_326,
    0.8391169718222188,
    0.7463319064601508,
    0.636_053_680_726_515,
    0.5108670019508271,
    0.3737060887154196,
    0.2277858511416451,
    0.07652652113349733,
];

/// Upper orthant probability `P(X > h, Y > k)` for standard bivariate
/// normal `(X, Y)` with correlation `r`.
fn bvn_upper(h: f64, k: f64, r: f64) -> f64 {
    if h == f64::INFINITY || k == f64::INFINITY {
        return 0.0;
    }
    if h == f64::NEG_INFINITY {
        return if k == f64::NEG_INFINITY { 1.0 } else { norm_cdf(-k) };
    }
    if k == f64::NEG_INFINITY {
        return norm_cdf(-h);
    }
    if r == 0.0 {
        return norm_cdf(-h) * norm_cdf(-k);
    }
    let (w, x): (&[f64], &[f64]) = if r.abs() < 0.3 {
        (&W6, &X6)
    } else if r.abs() < 0.75 {
        (&W12, &X12)
    } else {
        (&W20, &X20)
    };
    // nodes are mirrored about 1 on [0, 2]
    let nodes = || {
        w.iter()
            .zip(x)
            .flat_map(|(&wi, &xi)| [(wi, 1.0 - xi), (wi, 1.0 + xi)])
    };
    let tp = 2.0 * PI;
    let (h, mut k) = (h, k);
    let mut hk = h * k;
    let mut bvn = 0.0;
    if r.abs() < 0.925 {
        let hs = (h * h + k * k) / 2.0;
        let asr = r.asin() / 2.0;
        for (wi, xi) in nodes() {
            let sn = (asr * xi).sin();
            bvn += wi * ((sn * hk - hs) / (1.0 - sn * sn)).exp();
        }
        bvn = bvn * asr / tp + norm_cdf(-h) * norm_cdf(-k);
    } else {
        if r < 0.0 {
            k = -k;
            hk = -hk;
        }
        if r.abs() < 1.0 {
            let as_ = 1.0 - r * r;
            let mut a = as_.sqrt();
            let bs = (h - k) * (h - k);
            let c = (4.0 - hk) / 8.0;
            let d = (12.0 - hk) / 80.0;
            let asr = -(bs / as_ + hk) / 2.0;
            if asr > -100.0 {
                bvn = a * asr.exp() * (1.0 - c * (bs - as_) * (1.0 - d * bs) / 3.0 + c * d * as_ * as_);
            }
            if hk > -100.0 {
                let b = bs.sqrt();
                let sp = tp.sqrt() * norm_cdf(-b / a);
                bvn -= (-hk / 2.0).exp() * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
            }
            a /= 2.0;
            let mut sum = 0.0;
            for (wi, xi) in nodes() {
                let xs = (a * xi).powi(2);
                let asr = -(bs / xs + hk) / 2.0;
                if asr > -100.0 {
                    let sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
                    let rs = (1.0 - xs).sqrt();
                    let ep = (-(hk / 2.0) * xs / (1.0 + rs).powi(2)).exp() / rs;
                    sum += wi * asr.exp() * (sp - ep);
                }
            }
            bvn = (a * sum - bvn) / tp;
        }
        if r > 0.0 {
            bvn += norm_cdf(-h.max(k));
        } else if h >= k {
            bvn = -bvn;
        } else {
            let l = if h < 0.0 {
                norm_cdf(k) - norm_cdf(h)
            } else {
                norm_cdf(-h) - norm_cdf(-k)
            };
            bvn = l - bvn;
        }
    }
    bvn.clamp(0.0, 1.0)
}

/// `P(X ≤ h, Y ≤ k)` for a standard bivariate normal with correlation `r`;
/// infinite limits are allowed.
pub fn bvn_cdf(h: f64, k: f64, r: f64) -> f64 {
    bvn_upper(-h, -k, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// `∫_{-∞}^{h} φ(x) Φ((k - r x)/√(1 - r²)) dx` by composite Simpson.
    fn oracle(h: f64, k: f64, r: f64) -> f64 {
        let lo = -10.0;
        let n = 20_000;
        let step = (h - lo) / n as f64;
        let s = (1.0 - r * r).sqrt();
        let f = |x: f64| norm_pdf(x) * norm_cdf((k - r * x) / s);
        let mut acc = f(lo) + f(h);
        for i in 1..n {
            let x = lo + i as f64 * step;
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
        }
        acc * step / 3.0
    }

    #[test]
    fn matches_quadrature() {
        for &r in &[-0.95, -0.8, -0.5, -0.1, 0.2, 0.6, 0.9, 0.97] {
            for &(h, k) in &[(0.0, 0.0), (-1.0, 0.5), (1.3, -0.4), (2.0, 2.5), (-2.2, -1.7)] {
                assert_abs_diff_eq!(bvn_cdf(h, k, r), oracle(h, k, r), epsilon = 5e-9);
            }
        }
    }

    #[test]
    fn zero_correlation_factorises() {
        assert_eq!(bvn_cdf(0.3, -0.7, 0.0), norm_cdf(0.3) * norm_cdf(-0.7));
    }

    #[test]
    fn orthant_closed_form() {
        // P(X ≤ 0, Y ≤ 0) = 1/4 + asin(r) / (2π)
        for &r in &[-0.9, -0.3, 0.4, 0.95] {
            assert_abs_diff_eq!(bvn_cdf(0.0, 0.0, r), 0.25 + r.asin() / (2.0 * PI), epsilon = 1e-14);
        }
    }

    #[test]
    fn infinite_limits() {
        assert_eq!(bvn_cdf(f64::INFINITY, f64::INFINITY, 0.5), 1.0);
        assert_eq!(bvn_cdf(f64::NEG_INFINITY, 1.0, 0.5), 0.0);
        assert_abs_diff_eq!(bvn_cdf(f64::INFINITY, 0.7, 0.5), norm_cdf(0.7), epsilon = 1e-15);
    }
}
