//! Objective definitions. Every evaluator is pure and defined on all of R^n.

use std::f64::consts::{E, PI};

use super::{Attribute::*, BenchmarkFunction, DimClass, Optimum};

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

pub fn alpine(x: &[f64]) -> f64 {
    x.iter().map(|v| (v * v.sin() + 0.1 * v).abs()).sum()
}

pub fn booth(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a + 2.0 * b - 7.0).powi(2) + (2.0 * a + b - 5.0).powi(2)
}

pub fn cross_in_tray(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let r = (a * a + b * b).sqrt();
    let inner = (a.sin() * b.sin() * (100.0 - r / PI).abs().exp()).abs() + 1.0;
    -0.0001 * inner.powf(0.1)
}

pub fn drop_wave(x: &[f64]) -> f64 {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    -(1.0 + (12.0 * r2.sqrt()).cos()) / (0.5 * r2 + 2.0)
}

fn easom2(a: f64, b: f64) -> f64 {
    -a.cos() * b.cos() * (-((a - PI).powi(2) + (b - PI).powi(2))).exp()
}

fn eggholder2(a: f64, b: f64) -> f64 {
    -(b + 47.0) * (a / 2.0 + b + 47.0).abs().sqrt().sin() - a * (a - (b + 47.0)).abs().sqrt().sin()
}

fn schaffer_f6_2(a: f64, b: f64) -> f64 {
    let r2 = a * a + b * b;
    0.5 + (r2.sqrt().sin().powi(2) - 0.5) / (1.0 + 0.001 * r2).powi(2)
}

fn goldstein_price2(a: f64, b: f64) -> f64 {
    let p = 1.0
        + (a + b + 1.0).powi(2)
            * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let q = 30.0
        + (2.0 * a - 3.0 * b).powi(2)
            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    p * q
}

fn schaffer_n2_2(a: f64, b: f64) -> f64 {
    0.5 + ((a * a - b * b).sin().powi(2) - 0.5) / (1.0 + 0.001 * (a * a + b * b)).powi(2)
}

/// Plain kernel at n = 2, cyclic pairwise sum `sum_i g(x_i, x_{(i+1) mod n})` otherwise.
fn expanded(x: &[f64], g: fn(f64, f64) -> f64) -> f64 {
    let n = x.len();
    if n == 2 {
        return g(x[0], x[1]);
    }
    (0..n).map(|i| g(x[i], x[(i + 1) % n])).sum()
}

pub fn easom(x: &[f64]) -> f64 {
    expanded(x, easom2)
}

pub fn eggholder(x: &[f64]) -> f64 {
    expanded(x, eggholder2)
}

pub fn expanded_schaffer_f6(x: &[f64]) -> f64 {
    expanded(x, schaffer_f6_2)
}

pub fn goldstein_price(x: &[f64]) -> f64 {
    expanded(x, goldstein_price2)
}

pub fn schaffer_n2(x: &[f64]) -> f64 {
    expanded(x, schaffer_n2_2)
}

pub fn expanded_zakharov(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let lin: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    sq + lin.powi(2) + lin.powi(4)
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v / 4000.0).sum();
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    1.0 + sum - prod
}

pub fn himmelblau(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a * a + b - 11.0).powi(2) + (a + b * b - 7.0).powi(2)
}

pub fn holder_table(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let r = (a * a + b * b).sqrt();
    -(a.sin() * b.cos() * (1.0 - r / PI).abs().exp()).abs()
}

pub fn levy_n13(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (3.0 * PI * a).sin().powi(2)
        + (a - 1.0).powi(2) * (1.0 + (3.0 * PI * b).sin().powi(2))
        + (b - 1.0).powi(2) * (1.0 + (2.0 * PI * b).sin().powi(2))
}

pub fn matyas(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    0.26 * (a * a + b * b) - 0.48 * a * b
}

/// Steepness exponent `m`.
pub const MICHALEWICZ_M: i32 = 10;

pub fn michalewicz(x: &[f64]) -> f64 {
    -x.iter()
        .enumerate()
        .map(|(i, v)| v.sin() * ((i + 1) as f64 * v * v / PI).sin().powi(2 * MICHALEWICZ_M))
        .sum::<f64>()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

pub fn schwefel(x: &[f64]) -> f64 {
    418.9829 * x.len() as f64 - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>()
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn styblinski_tang(x: &[f64]) -> f64 {
    0.5 * x
        .iter()
        .map(|v| v.powi(4) - 16.0 * v * v + 5.0 * v)
        .sum::<f64>()
}

pub fn three_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    2.0 * a * a - 1.05 * a.powi(4) + a.powi(6) / 6.0 + a * b + b * b
}

pub fn whitley(x: &[f64]) -> f64 {
    let mut total = 0.0;
    for &xi in x {
        for &xj in x {
            let valley = (xi * xi - xj).powi(2);
            let tail = (1.0 - xj).powi(2);
            let y = 100.0 * valley + tail;
            total += y * y / 4000.0 - (200.0 * valley + tail).cos() + 1.0;
        }
    }
    total
}

const HIMMELBLAU_MIN: &[[f64; 2]] = &[
    [3.0, 2.0],
    [-2.805118, 3.131312],
    [-3.779310, -3.283186],
    [3.584428, -1.848126],
];

const CROSS_IN_TRAY_MIN: &[[f64; 2]] = &[
    [1.34941, -1.34941],
    [-1.34941, 1.34941],
    [1.34941, 1.34941],
    [-1.34941, -1.34941],
];

const HOLDER_TABLE_MIN: &[[f64; 2]] = &[
    [8.05502, 9.66459],
    [-8.05502, 9.66459],
    [8.05502, -9.66459],
    [-8.05502, -9.66459],
];

/// Per-coordinate minimizer of Styblinski-Tang.
pub const STYBLINSKI_TANG_ARGMIN: f64 = -2.903534;
/// Per-coordinate minimizer of Schwefel.
pub const SCHWEFEL_ARGMIN: f64 = 420.9687;

pub(super) fn standard() -> Vec<BenchmarkFunction> {
    use DimClass::{Fixed2D, NDimensional};
    let uniform = |value, per_dim, coord| Optimum::Uniform {
        value,
        per_dim,
        coord: Some(coord),
    };
    vec![
        BenchmarkFunction::new(
            "ackley",
            ackley,
            (-5.0, 5.0),
            NDimensional,
            &[Multimodal, NonSeparable, Differentiable, Continuous, Scalable],
            uniform(0.0, 0.0, 0.0),
        ),
        BenchmarkFunction::new(
            "alpine",
            alpine,
            (-10.0, 10.0),
            NDimensional,
            &[Multimodal, Separable, NonDifferentiable, Continuous],
            uniform(0.0, 0.0, 0.0),
        ),
        BenchmarkFunction::new(
            "booth",
            booth,
            (-10.0, 10.0),
            Fixed2D,
            &[Unimodal, NonSeparable, Differentiable, Continuous],
            Optimum::Planar {
                value: 0.0,
                points: &[[1.0, 3.0]],
            },
        ),
        BenchmarkFunction::new(
            "cross_in_tray",
            cross_in_tray,
            (-10.0, 10.0),
            Fixed2D,
            &[Multimodal, NonSeparable, NonDifferentiable, Continuous],
            Optimum::Planar {
                value: -2.06261,
                points: CROSS_IN_TRAY_MIN,
            },
        ),
        BenchmarkFunction::new(
            "drop_wave",
            drop_wave,
            (-5.12, 5.12),
            NDimensional,
            &[Multimodal, NonSeparable, Differentiable, Continuous],
            uniform(-1.0, 0.0, 0.0),
        ),
        BenchmarkFunction::new(
            "easom",
            easom,
            (-100.0, 100.0),
            NDimensional,
            &[Unimodal, NonSeparable, Differentiable, Continuous, Scalable],
            Optimum::Expanded {
                value: -1.0,
                points: &[[PI, PI]],
                cyclic_coord: Some(PI),
            },
        ),
        BenchmarkFunction::new(
            "eggholder",
            eggholder,
            (-512.0, 512.0),
            NDimensional,
            &[Multimodal, NonSeparable, NonDifferentiable, Continuous, Scalable],
            Optimum::Expanded {
                value: -959.6407,
                points: &[[512.0, 404.2319]],
                cyclic_coord: None,
            },
        ),
        BenchmarkFunction::new(
            "expanded_schaffer_f6",
            expanded_schaffer_f6,
            (-10.0, 10.0),
            NDimensional,
            &[Multimodal, NonSeparable, Differentiable, Continuous, Scalable],
            Optimum::Expanded {
                value: 0.0,
                points: &[[0.0, 0.0]],
                cyclic_coord: Some(0.0),
            },
        ),
        BenchmarkFunction::new(
            "expanded_zakharov",
            expanded_zakharov,
            (-10.0, 10.0),
            NDimensional,
            &[Unimodal, NonSeparable, Differentiable, Continuous, Scalable],
            uniform(0.0, 0.0, 0.0),
        ),
        BenchmarkFunction::new(
            "goldstein_price",
            goldstein_price,
            (-2.0, 2.0),
            NDimensional,
            &[Multimodal, NonSeparable, Differentiable, Continuous, Scalable],
            Optimum::Expanded {
                value: 3.0,
                points: &[[0.0, -1.0]],
                cyclic_coord: None,
            },
        ),
        BenchmarkFunction::new(
            "griewank",
            griewank,
            (-600.0, 600.0),
            NDimensional,
            &[Multimodal, NonSeparable, Differentiable, Continuous, Scalable],
            uniform(0.0, 0.0, 0.0),
        ),
        BenchmarkFunction::new(
            "himmelblau",
            himmelblau,
            (-5.0, 5.0),
            Fixed2D,
            &[Multimodal, NonSeparable, Differentiable, Continuous],
            Optimum::Planar {
                value: 0.0,
                points: HIMMELBLAU_MIN,
            },
        ),
        BenchmarkFunction::new(
            "holder_table",
            holder_table,
            (-10.0, 10.0),
            Fixed2D,
            &[Multimodal, NonSeparable, NonDifferentiable, Continuous],
            Optimum::Planar {
                value: -19.2085,
                points: HOLDER_TABLE_MIN,
            },
        ),
        BenchmarkFunction::new(
            "levy_n13",
            levy_n13,
            (-10.0, 10.0),
            Fixed2D,
            &[Multimodal, NonSeparable, Differentiable, Continuous],
            Optimum::Planar {
                value: 0.0,
                points: &[[1.0, 1.0]],
            },
        ),
        BenchmarkFunction::new(
            "matyas",
            matyas,
            (-10.0, 10.0),
            Fixed2D,
            &[Unimodal, NonSeparable, Differentiable, Continuous],
            Optimum::Planar {
                value: 0.0,
                points: &[[0.0, 0.0]],
            },
        ),
        BenchmarkFunction::new(
            "michalewicz",
            michalewicz,
            (0.0, PI),
            NDimensional,
            &[Multimodal, Separable, Differentiable, Continuous],
            Optimum::Unknown,
        ),
        BenchmarkFunction::new(
            "rastrigin",
            rastrigin,
            (-5.12, 5.12),
            NDimensional,
            &[Multimodal, Separable, Differentiable, Continuous],
            uniform(0.0, 0.0, 0.0),
        ),
        BenchmarkFunction::new(
            "rosenbrock",
            rosenbrock,
            (-2.048, 2.048),
            NDimensional,
            &[Unimodal, NonSeparable, Differentiable, Continuous, Scalable],
            uniform(0.0, 0.0, 1.0),
        ),
        BenchmarkFunction::new(
            "schaffer_n2",
            schaffer_n2,
            (-100.0, 100.0),
            NDimensional,
            &[Multimodal, NonSeparable, Differentiable, Continuous, Scalable],
            Optimum::Expanded {
                value: 0.0,
                points: &[[0.0, 0.0]],
                cyclic_coord: Some(0.0),
            },
        ),
        BenchmarkFunction::new(
            "schwefel",
            schwefel,
            (-500.0, 500.0),
            NDimensional,
            &[Multimodal, Separable, NonDifferentiable, Continuous, Scalable],
            uniform(0.0, 0.0, SCHWEFEL_ARGMIN),
        ),
        BenchmarkFunction::new(
            "sphere",
            sphere,
            (-5.12, 5.12),
            NDimensional,
            &[Unimodal, Separable, Differentiable, Continuous, Scalable],
            uniform(0.0, 0.0, 0.0),
        ),
        BenchmarkFunction::new(
            "styblinski_tang",
            styblinski_tang,
            (-5.0, 5.0),
            NDimensional,
            &[Multimodal, Separable, Differentiable, Continuous],
            uniform(0.0, -39.16599, STYBLINSKI_TANG_ARGMIN),
        ),
        BenchmarkFunction::new(
            "three_hump_camel",
            three_hump_camel,
            (-5.0, 5.0),
            Fixed2D,
            &[Unimodal, NonSeparable, Differentiable, Continuous],
            Optimum::Planar {
                value: 0.0,
                points: &[[0.0, 0.0]],
            },
        ),
        BenchmarkFunction::new(
            "whitley",
            whitley,
            (-10.0, 10.0),
            NDimensional,
            &[Multimodal, NonSeparable, Differentiable, Continuous, Scalable],
            uniform(0.0, 0.0, 1.0),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expanded_at_two_is_plain_kernel() {
        assert_eq!(easom(&[PI, PI]), -1.0);
        assert_eq!(goldstein_price(&[0.0, -1.0]), 3.0);
    }

    #[test]
    fn expanded_wraps_around() {
        let x = [0.3, -1.2, 2.0];
        let want = easom2(0.3, -1.2) + easom2(-1.2, 2.0) + easom2(2.0, 0.3);
        assert_eq!(easom(&x), want);
    }

    #[test]
    fn zakharov_weights_are_half_index() {
        // lin = 0.5*1*1 + 0.5*2*1 = 1.5
        let want = 2.0 + 1.5f64.powi(2) + 1.5f64.powi(4);
        assert_eq!(expanded_zakharov(&[1.0, 1.0]), want);
    }

    #[test]
    fn whitley_vanishes_at_ones() {
        assert_eq!(whitley(&[1.0; 5]), 0.0);
    }

    #[test]
    fn rosenbrock_in_one_dimension_is_zero() {
        assert_eq!(rosenbrock(&[3.0]), 0.0);
    }
}
