//! Standard normal tail, bivariate and trivariate orthant probabilities, and
//! the adaptive quadrature they share.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Correlations this close to ±1 are treated as exactly ±1.
pub const RHO_EDGE: f64 = 1e-12;

/// Upper tail `P(Z > x)` of a standard normal.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

/// Lower tail `P(Z < x)`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

const GL_X: [[f64; 10]; 3] = [
    [
        -0.9324695142031522,
        -0.6612093864662647,
        -0.2386191860831970,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        -0.9815606342467191,
        -0.9041172563704750,
        -0.7699026741943050,
        -0.5873179542866171,
        -0.3678314989981802,
        -0.1252334085114692,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        -0.9931285991850949,
        -0.9639719272779138,
        -0.9122344282513259,
        -0.8391169718222188,
        -0.7463319064601508,
        -0.6360536807265150,
        -0.5108670019508271,
        -0.3737060887154196,
        -0.2277858511416451,
        -0.07652652113349733,
    ],
];

const GL_W: [[f64; 10]; 3] = [
    [
        0.1713244923791705,
        0.3607615730481384,
        0.4679139345726904,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.04717533638651177,
        0.1069393259953183,
        0.1600783285433464,
        0.2031674267230659,
        0.2334925365383547,
        0.2491470458134029,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
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
    ],
];

/// Genz's algorithm for the upper bivariate orthant `P(X > h, Y > k)` with
/// correlation `r`, accurate to about 1e-15 absolute.
fn genz_bvnd(h: f64, k: f64, r: f64) -> f64 {
    const TWO_PI: f64 = 2.0 * PI;
    let (ng, lg) = if r.abs() < 0.3 {
        (0, 3)
    } else if r.abs() < 0.75 {
        (1, 6)
    } else {
        (2, 10)
    };
    let (x, w) = (&GL_X[ng], &GL_W[ng]);
    let mut k = k;
    let mut hk = h * k;
    let mut bvn = 0.0;
    if r.abs() < 0.925 {
        let hs = (h * h + k * k) / 2.0;
        let asr = r.asin();
        for i in 0..lg {
            for sign in [1.0, -1.0] {
                let sn = (asr * (sign * x[i] + 1.0) / 2.0).sin();
                bvn += w[i] * ((sn * hk - hs) / (1.0 - sn * sn)).exp();
            }
        }
        return bvn * asr / (2.0 * TWO_PI) + normal_cdf(-h) * normal_cdf(-k);
    }
    if r < 0.0 {
        k = -k;
        hk = -hk;
    }
    if r.abs() < 1.0 {
        let as_ = (1.0 - r) * (1.0 + r);
        let mut a = as_.sqrt();
        let bs = (h - k) * (h - k);
        let c = (4.0 - hk) / 8.0;
        let d = (12.0 - hk) / 16.0;
        bvn = a
            * (-(bs / as_ + hk) / 2.0).exp()
            * (1.0 - c * (bs - as_) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as_ * as_ / 5.0);
        if hk > -160.0 {
            let b = bs.sqrt();
            bvn -= (-hk / 2.0).exp()
                * TWO_PI.sqrt()
                * normal_cdf(-b / a)
                * b
                * (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
        }
        a /= 2.0;
        for i in 0..lg {
            let xs = (a * (x[i] + 1.0)).powi(2);
            let rs = (1.0 - xs).sqrt();
            bvn += a
                * w[i]
                * ((-bs / (2.0 * xs) - hk / (1.0 + rs)).exp() / rs
                    - (-(bs / xs + hk) / 2.0).exp() * (1.0 + c * xs * (1.0 + d * xs)));
            let xs = as_ * (1.0 - x[i]).powi(2) / 4.0;
            let rs = (1.0 - xs).sqrt();
            bvn += a
                * w[i]
                * (-(bs / xs + hk) / 2.0).exp()
                * ((-hk * (1.0 - rs) / (2.0 * (1.0 + rs))).exp() / rs
                    - (1.0 + c * xs * (1.0 + d * xs)));
        }
        bvn = -bvn / TWO_PI;
    }
    if r > 0.0 {
        bvn + normal_cdf(-h.max(k))
    } else {
        -bvn + (normal_cdf(-h) - normal_cdf(-k)).max(0.0)
    }
}

/// Upper orthant `P(X > h, Y > k)` of a standard bivariate normal with
/// correlation `rho`. Correlations within [`RHO_EDGE`] of ±1 use the exact
/// degenerate forms.
pub fn bvn_upper(h: f64, k: f64, rho: f64) -> f64 {
    if rho >= 1.0 - RHO_EDGE {
        return q_function(h.max(k));
    }
    if rho <= -1.0 + RHO_EDGE {
        // X > h and -X > k
        return (normal_cdf(-k) - normal_cdf(h)).max(0.0);
    }
    genz_bvnd(h, k, rho).clamp(0.0, 1.0)
}

/// Bivariate CDF `P(X < a, Y < b)`.
pub fn bvn_cdf(a: f64, b: f64, rho: f64) -> f64 {
    bvn_upper(-a, -b, rho)
}

/// Correlations `(r12, r13, r23)` of a trivariate standard normal.
pub type Correlations = [f64; 3];

fn corr(r: &Correlations, i: usize, j: usize) -> f64 {
    match (i.min(j), i.max(j)) {
        (0, 1) => r[0],
        (0, 2) => r[1],
        (1, 2) => r[2],
        _ => 1.0,
    }
}

/// Upper orthant `P(Z1 > t1, Z2 > t2, Z3 > t3)`, by adaptive quadrature
/// over one coordinate of the conditional bivariate upper orthant.
///
/// The correlation matrix may be singular, provided no two coordinates are
/// perfectly positively correlated (merge those first).
pub fn tvn_upper(t: [f64; 3], r: &Correlations) -> f64 {
    // condition on the coordinate least correlated with the other two
    let c = (0..3)
        .max_by(|&a, &b| {
            let score = |i: usize| {
                (0..3)
                    .filter(|&j| j != i)
                    .map(|j| 1.0 - corr(r, i, j).powi(2))
                    .fold(f64::INFINITY, f64::min)
            };
            score(a).total_cmp(&score(b)).then(b.cmp(&a))
        })
        .unwrap();
    let (a, b) = match c {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (rca, rcb, rab) = (corr(r, c, a), corr(r, c, b), corr(r, a, b));
    let sa = (1.0 - rca * rca).max(0.0).sqrt();
    let sb = (1.0 - rcb * rcb).max(0.0).sqrt();
    if sa < 1e-9 || sb < 1e-9 {
        // one of them is ±Z_c, which turns its tail into an interval on Z_c
        let (tied, other, r_tied, r_other, s_other) = if sa < 1e-9 {
            (a, b, rca, rcb, sb)
        } else {
            (b, a, rcb, rca, sa)
        };
        let (lo, hi) = if r_tied > 0.0 {
            (t[c].max(t[tied]), t[c].max(t[tied]).max(0.0) + 10.0)
        } else {
            (t[c], -t[tied])
        };
        if lo >= hi {
            return 0.0;
        }
        return integrate(
            |x| normal_pdf(x) * conditional_tail(t[other], r_other, s_other, x),
            lo,
            hi,
            1e-17,
            1e-11,
        );
    }
    let rho = ((rab - rca * rcb) / (sa * sb)).clamp(-1.0, 1.0);
    let lo = t[c];
    let hi = t[c].max(0.0) + 10.0;
    if lo >= hi {
        return 0.0;
    }
    integrate(
        |x| normal_pdf(x) * bvn_upper((t[a] - rca * x) / sa, (t[b] - rcb * x) / sb, rho),
        lo,
        hi,
        1e-17,
        1e-11,
    )
}

fn conditional_tail(t: f64, r: f64, s: f64, x: f64) -> f64 {
    if s < 1e-12 {
        if r * x > t {
            1.0
        } else {
            0.0
        }
    } else {
        q_function((t - r * x) / s)
    }
}

/// Trivariate CDF `P(Z1 < a1, Z2 < a2, Z3 < a3)`, computed as one minus
/// the union of the three upper tails.
pub fn tvn_cdf(a: [f64; 3], r: &Correlations) -> f64 {
    let union = q_function(a[0]) + q_function(a[1]) + q_function(a[2])
        - bvn_upper(a[0], a[1], r[0])
        - bvn_upper(a[0], a[2], r[1])
        - bvn_upper(a[1], a[2], r[2])
        + tvn_upper(a, r);
    (1.0 - union).clamp(0.0, 1.0)
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
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

/// One 15-point Kronrod panel: (estimate, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let s = f(c - h * x) + f(c + h * x);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]`, bisecting
/// the worst panel until the summed error estimate is within
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> f64 {
    integrate_with_breaks(f, &[a, b], abs_tol, rel_tol)
}

/// As [`integrate`], with the interval pre-split at the given sorted points.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> f64 {
    const MAX_PANELS: usize = 4000;
    let mut panels: Vec<(f64, f64, f64, f64)> = points
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let (v, e) = gk15(&f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    loop {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) || panels.len() >= MAX_PANELS {
            return total;
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (a, b, _, _) = panels.swap_remove(worst);
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return total;
        }
        let (v1, e1) = gk15(&f, a, m);
        let (v2, e2) = gk15(&f, m, b);
        panels.push((a, m, v1, e1));
        panels.push((m, b, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_values() {
        assert_eq!(q_function(0.0), 0.5);
        assert_eq!(q_function(f64::INFINITY), 0.0);
        assert!((q_function(3f64.sqrt()) - 0.0416322583317752).abs() < 1e-16);
        assert!((q_function(-1.3) - (1.0 - q_function(1.3))).abs() < 1e-16);
    }

    #[test]
    fn bivariate_reference_points() {
        // from a 30-digit quadrature of the defining integral
        let cases = [
            (0.3, -0.7, 0.5, 0.206523779785739011),
            (1.2, 0.4, -0.6, 0.545531618936232640),
            (-1.5, 2.0, 0.95, 0.0668072012688580660),
            (0.8, 0.9, -0.97, 0.604084476069870525),
            (-2.0, -1.5, 0.99, 0.0227495156624872626),
            (1.0, -1.0, -0.999, 0.00431705799618669212),
        ];
        for (a, b, r, want) in cases {
            assert!((bvn_cdf(a, b, r) - want).abs() < 1e-13, "{a} {b} {r}");
        }
    }

    #[test]
    fn bivariate_edges() {
        assert!((bvn_cdf(0.5, 1.0, 1.0) - normal_cdf(0.5)).abs() < 1e-16);
        assert!((bvn_cdf(0.5, 1.0, -1.0) - (normal_cdf(0.5) - normal_cdf(-1.0))).abs() < 1e-15);
        assert_eq!(bvn_cdf(-1.0, -1.0, -1.0), 0.0);
        assert!((bvn_cdf(0.3, 0.6, 0.0) - normal_cdf(0.3) * normal_cdf(0.6)).abs() < 1e-15);
        assert!((bvn_upper(0.0, 0.0, 0.5) - (0.25 + (0.5f64).asin() / (2.0 * PI))).abs() < 1e-15);
    }

    #[test]
    fn trivariate_independent_and_singular() {
        let a = [0.4, -0.2, 1.1];
        let prod: f64 = a.iter().map(|&x| normal_cdf(x)).product();
        assert!((tvn_cdf(a, &[0.0; 3]) - prod).abs() < 1e-12);
        // Z3 = -Z1: P(Z1 < 1, Z2 < 0.5, Z1 > -0.7)
        let got = tvn_cdf([1.0, 0.5, 0.7], &[0.3, -1.0, -0.3]);
        let want = integrate(
            |x| normal_pdf(x) * normal_cdf((0.5 - 0.3 * x) / (1.0 - 0.09f64).sqrt()),
            -0.7,
            1.0,
            1e-16,
            1e-13,
        );
        assert!((got - want).abs() < 1e-10, "{got} {want}");
    }

    #[test]
    fn quadrature() {
        let v = integrate(|x| x.sin(), 0.0, PI, 1e-15, 1e-14);
        assert!((v - 2.0).abs() < 1e-13);
        let kink = integrate_with_breaks(|x: f64| x.abs(), &[-1.0, 0.0, 2.0], 1e-15, 1e-14);
        assert!((kink - 2.5).abs() < 1e-13);
    }
}
