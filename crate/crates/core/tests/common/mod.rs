//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let s = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod quadrature to absolute tolerance `tol`.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth > 40 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth + 1) + rec(f, m, b, 0.5 * tol, depth + 1)
    }
    rec(f, a, b, tol, 0)
}

/// The Green kernel straight from its defining integral over `[max(x,y), 1]`,
/// reflected through `(1/2, 1/2)` when `x + y < 1`.
pub fn green_by_quadrature(alpha: u32, x: f64, y: f64) -> f64 {
    let (x, y) = if x + y < 1.0 { (1.0 - x, 1.0 - y) } else { (x, y) };
    let hi = x.max(y);
    if hi >= 1.0 || x == 0.0 || y == 0.0 {
        return 0.0;
    }
    let a = alpha as i32;
    let fact: f64 = (1..alpha).map(f64::from).product();
    let integrand = |t: f64| (t - x).powi(a - 1) * (t - y).powi(a - 1) / t.powi(2 * a);
    x.powi(a) * y.powi(a) / (fact * fact) * adaptive(&integrand, hi, 1.0, 1e-15)
}

/// `a_k` of `theta -> a(e^{i theta})` by the trapezoid rule on `samples` points
/// (exact for trigonometric polynomials of degree below `samples / 2`).
pub fn fourier_coefficient<F: Fn(f64) -> f64>(a: F, k: i64, samples: usize) -> f64 {
    let h = 2.0 * PI / samples as f64;
    (0..samples).fold(0.0, |acc, i| {
        let th = i as f64 * h;
        acc + a(th) * (k as f64 * th).cos()
    }) / samples as f64
}

pub const C1: f64 = PI * PI;
/// `beta^4` with `cos(beta) cosh(beta) = 1` (first clamped-beam frequency).
pub fn c2_reference() -> f64 {
    let mut b: f64 = 4.73;
    for _ in 0..50 {
        let f = b.cos() * b.cosh() - 1.0;
        let df = -b.sin() * b.cosh() + b.cos() * b.sinh();
        b -= f / df;
    }
    b.powi(4)
}
