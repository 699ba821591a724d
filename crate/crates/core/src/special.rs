//! Log-gamma, digamma, trigamma, log-beta, and the regularized incomplete
//! beta function.
//!
//! Log-gamma uses the Stirling series with Bernoulli-number corrections above
//! `x = 8` and argument-recurrence lifting below; digamma and trigamma lift to
//! `x >= 10` and then switch to their asymptotic series. For `f64` this gives
//! relative accuracy around 1e-14 for log-gamma (arguments >= 1, away from its
//! zeros at 1 and 2) and 1e-12 for digamma/trigamma.
//!
//! Log-beta has a dedicated path for widely separated arguments: with
//! `b >> a`, forming `lnΓ(b) - lnΓ(a+b)` directly cancels catastrophically,
//! so the Stirling expansions are differenced analytically instead. Beta
//! arguments reach `n*N ≈ 5e11` in the posterior kernel.

use crate::real::Real;

/// Stirling-series threshold for log-gamma.
const LGAMMA_LIFT: f64 = 8.0;
/// Asymptotic-series threshold for digamma and trigamma.
const PSI_LIFT: f64 = 10.0;

/// `ln(sqrt(2*pi))`
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2n} / (2n(2n-1))` for the log-gamma Stirling tail.
const LGAMMA_TAIL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `B_{2n} / (2n)` for the digamma asymptotic series.
const DIGAMMA_TAIL: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// `B_{2n}` for the trigamma asymptotic series.
const TRIGAMMA_TAIL: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

fn r<R: Real>(v: f64) -> R {
    R::from_f64_lit(v)
}

/// Stirling tail `S(x) = sum c_n / x^(2n-1)`, valid for `x >= LGAMMA_LIFT`.
fn lgamma_tail<R: Real>(x: R) -> R {
    let inv2 = (R::one() / x) * (R::one() / x);
    let mut term = R::one() / x;
    let mut acc = R::zero();
    for &c in &LGAMMA_TAIL {
        acc += r::<R>(c) * term;
        term *= inv2;
    }
    acc
}

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma<R: Real>(x: R) -> R {
    if !(x > R::zero()) {
        return R::nan();
    }
    let lift = r::<R>(LGAMMA_LIFT);
    if x >= lift {
        return (x - r(0.5)) * x.ln() - x + r(LN_SQRT_2PI) + lgamma_tail(x);
    }
    // ln Γ(x) = ln Γ(x + k) - sum ln(x + i)
    let mut shift = R::zero();
    let mut y = x;
    while y < lift {
        shift += y.ln();
        y += R::one();
    }
    (y - r(0.5)) * y.ln() - y + r(LN_SQRT_2PI) + lgamma_tail(y) - shift
}

/// Digamma function `d/dx ln Γ(x)` for `x > 0`.
pub fn digamma<R: Real>(x: R) -> R {
    if !(x > R::zero()) {
        return R::nan();
    }
    let lift = r::<R>(PSI_LIFT);
    let mut shift = R::zero();
    let mut y = x;
    while y < lift {
        shift += R::one() / y;
        y += R::one();
    }
    let inv = R::one() / y;
    let inv2 = inv * inv;
    let mut term = inv2;
    let mut tail = R::zero();
    for &c in &DIGAMMA_TAIL {
        tail += r::<R>(c) * term;
        term *= inv2;
    }
    y.ln() - inv * r(0.5) - tail - shift
}

/// Trigamma function `d^2/dx^2 ln Γ(x)` for `x > 0`.
pub fn trigamma<R: Real>(x: R) -> R {
    if !(x > R::zero()) {
        return R::nan();
    }
    let lift = r::<R>(PSI_LIFT);
    let mut shift = R::zero();
    let mut y = x;
    while y < lift {
        shift += R::one() / (y * y);
        y += R::one();
    }
    let inv = R::one() / y;
    let inv2 = inv * inv;
    let mut term = inv * inv2;
    let mut tail = R::zero();
    for &c in &TRIGAMMA_TAIL {
        tail += r::<R>(c) * term;
        term *= inv2;
    }
    inv + inv2 * r(0.5) + tail + shift
}

/// Natural log of the beta function `B(a, b)` for `a, b > 0`.
pub fn ln_beta<R: Real>(a: R, b: R) -> R {
    if !(a > R::zero()) || !(b > R::zero()) {
        return R::nan();
    }
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if hi < r(LGAMMA_LIFT) {
        return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
    }
    // lnΓ(hi) - lnΓ(lo+hi) differenced through the Stirling expansion:
    // the (x - 1/2) ln x - x leading terms are combined analytically so no
    // large intermediate is formed.
    let diff = lo - lo * hi.ln() - (lo + hi - r(0.5)) * (lo / hi).ln_1p() + lgamma_tail(hi)
        - lgamma_tail(lo + hi);
    ln_gamma(lo) + diff
}

/// Regularized incomplete beta function `I_x(a, b)`.
///
/// Continued-fraction evaluation (modified Lentz), switching to the symmetric
/// tail when `x` lies past the distribution bulk.
pub fn inc_beta<R: Real>(a: R, b: R, x: R) -> R {
    if !(a > R::zero()) || !(b > R::zero()) {
        return R::nan();
    }
    if x <= R::zero() {
        return R::zero();
    }
    if x >= R::one() {
        return R::one();
    }
    let switch = (a + R::one()) / (a + b + r(2.0));
    if x < switch {
        inc_beta_direct(a, b, x)
    } else {
        R::one() - inc_beta_direct(b, a, R::one() - x)
    }
}

fn inc_beta_direct<R: Real>(a: R, b: R, x: R) -> R {
    let front = (a * x.ln() + b * (-x).ln_1p() - ln_beta(a, b)).exp() / a;
    front * beta_cf(a, b, x)
}

/// Continued fraction for the incomplete beta function.
fn beta_cf<R: Real>(a: R, b: R, x: R) -> R {
    let max_iter = 500;
    let eps = R::epsilon();
    let fpmin = R::min_positive_value() / eps;

    let qab = a + b;
    let qap = a + R::one();
    let qam = a - R::one();
    let mut c = R::one();
    let mut d = R::one() - qab * x / qap;
    if d.abs() < fpmin {
        d = fpmin;
    }
    d = R::one() / d;
    let mut h = d;
    for m in 1..=max_iter {
        let m_r = r::<R>(m as f64);
        let m2 = m_r + m_r;
        // even step
        let aa = m_r * (b - m_r) * x / ((qam + m2) * (a + m2));
        d = R::one() + aa * d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = R::one() + aa / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = R::one() / d;
        h = h * d * c;
        // odd step
        let aa = -(a + m_r) * (qab + m_r) * x / ((a + m2) * (qap + m2));
        d = R::one() + aa * d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = R::one() + aa / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = R::one() / d;
        let del = d * c;
        h = h * del;
        if (del - R::one()).abs() < eps {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    const LGAMMA_REF: [(f64, f64); 19] = [
        (1.0, 0.0),
        (1.000001, -5.7721484243490012186e-7),
        (1.2, -0.08537409000331584972),
        (1.4608, -0.12148595541107302323),
        (2.0, 0.0),
        (2.5, 0.28468287047291915963),
        (3.0, 0.69314718055994530942),
        (4.9, 3.0285569003773405325),
        (7.5, 7.5343642367587329552),
        (8.0, 8.5251613610654143002),
        (10.0, 12.801827480081469611),
        (25.3, 55.746181183584590052),
        (100.0, 359.13420536957539878),
        (1234.5, 7550.5509010778948957),
        (1e5, 1051287.7089736568949),
        (3.7e7, 607777845.61823874645),
        (1e9, 19723265827.503716771),
        (5.1e11, 13238415046946.479232),
        (1e13, 289336062089211.89106),
    ];

    const DIGAMMA_REF: [(f64, f64); 10] = [
        (1.0, -0.57721566490153286061),
        (1.5, 0.036489973978576520559),
        (2.0, 0.42278433509846713939),
        (3.25, 1.0169909110681790364),
        (6.0, 1.7061176684318004727),
        (9.99, 2.2507003728312010995),
        (10.0, 2.2517525890667211076),
        (47.3, 3.8459022251943587401),
        (1e4, 9.2102903711428494036),
        (2.5e9, 21.639556568620566221),
    ];

    const TRIGAMMA_REF: [(f64, f64); 10] = [
        (1.0, 1.6449340668482264365),
        (1.5, 0.93480220054467930942),
        (2.0, 0.64493406684822643647),
        (3.25, 0.35979829030957987507),
        (6.0, 0.18132295573711532536),
        (9.99, 0.10527695014824178675),
        (10.0, 0.10516633568168574612),
        (47.3, 0.021366708514893607686),
        (1e4, 0.00010000500016666666633),
        (2.5e9, 4.0000000008000000001e-10),
    ];

    const LN_BETA_REF: [(f64, f64, f64); 6] = [
        (1.0, 1.0, 0.0),
        (0.5, 0.5, 1.1447298858494001741),
        (2.0, 3.0, -2.4849066497880003102),
        (10.0, 990.0, -56.220531795028820238),
        (5003.0, 499876543.0, -62601.294710570049658),
        (12.7, 4.2e11, -320.66366778304938352),
    ];

    const INC_BETA_REF: [(f64, f64, f64, f64); 7] = [
        (1.0, 1.0, 0.3, 0.3),
        (2.0, 5.0, 0.2, 0.34464),
        (0.5, 0.5, 0.5, 0.5),
        (10.0, 990.0, 0.011, 0.65949157045258858982),
        (3.1, 200000.0, 1.26e-5, 0.43684651013020758993),
        (8.0, 2.0, 0.9, 0.774840978),
        (5.0, 5.0, 0.999, 0.99999999999987441946),
    ];

    fn rel_err(got: f64, want: f64) -> f64 {
        if want == 0.0 {
            got.abs()
        } else {
            ((got - want) / want).abs()
        }
    }

    #[test]
    fn ln_gamma_reference_values() {
        for &(x, want) in &LGAMMA_REF {
            let got = ln_gamma(x);
            // Relative accuracy where ln Γ is not microscopically small;
            // absolute near its zeros at 1 and 2.
            if want.abs() > 1e-3 {
                assert!(rel_err(got, want) < 1e-12, "x={x}: got {got}, want {want}");
            } else {
                assert!((got - want).abs() < 1e-14, "x={x}: got {got}, want {want}");
            }
        }
    }

    #[test]
    fn digamma_reference_values() {
        for &(x, want) in &DIGAMMA_REF {
            let got = digamma(x);
            assert!(rel_err(got, want) < 1e-10, "x={x}: got {got}, want {want}");
        }
    }

    #[test]
    fn trigamma_reference_values() {
        for &(x, want) in &TRIGAMMA_REF {
            let got = trigamma(x);
            assert!(rel_err(got, want) < 1e-10, "x={x}: got {got}, want {want}");
        }
    }

    #[test]
    fn ln_beta_reference_values() {
        for &(a, b, want) in &LN_BETA_REF {
            let got = ln_beta(a, b);
            if want.abs() > 1e-3 {
                assert!(
                    rel_err(got, want) < 1e-12,
                    "a={a}, b={b}: got {got}, want {want}"
                );
            } else {
                assert!((got - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn inc_beta_reference_values() {
        for &(a, b, x, want) in &INC_BETA_REF {
            let got = inc_beta(a, b, x);
            assert!(
                rel_err(got, want) < 1e-11,
                "a={a}, b={b}, x={x}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn recurrence_identities() {
        for i in 0..200 {
            let x = 1.0 + 0.37 * i as f64;
            assert!(rel_err(ln_gamma(x + 1.0), ln_gamma(x) + x.ln()) < 1e-13);
            assert!(rel_err(digamma(x + 1.0), digamma(x) + 1.0 / x) < 1e-12);
            assert!(rel_err(trigamma(x + 1.0), trigamma(x) - 1.0 / (x * x)) < 1e-11);
        }
    }

    #[test]
    fn matches_independent_implementation() {
        for i in 1..400 {
            let x = 0.5 + 0.773 * i as f64;
            assert!(rel_err(ln_gamma(x), statrs::function::gamma::ln_gamma(x)) < 1e-12);
            assert!(
                (digamma(x) - statrs::function::gamma::digamma(x)).abs()
                    < 1e-10 * digamma(x).abs().max(1.0)
            );
        }
        for i in 1..50 {
            let a = 0.3 + 0.9 * i as f64;
            let b = 400.0 / i as f64;
            let x = i as f64 / 50.5;
            assert!(
                (inc_beta(a, b, x) - statrs::function::beta::beta_reg(a, b, x)).abs() < 1e-10
            );
        }
    }

    #[test]
    fn inc_beta_bounds_and_monotonicity() {
        let mut prev = 0.0;
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            let v = inc_beta(3.5, 7.2, x);
            assert!((0.0..=1.0).contains(&v));
            assert!(v >= prev);
            prev = v;
        }
        assert_eq!(inc_beta(2.0, 3.0, 0.0), 0.0);
        assert_eq!(inc_beta(2.0, 3.0, 1.0), 1.0);
    }

    #[test]
    fn f32_instantiation_is_sane() {
        let g: f32 = ln_gamma(10.0f32);
        assert!((g - 12.801827).abs() < 1e-3);
        let d: f32 = digamma(10.0f32);
        assert!((d - 2.2517526).abs() < 1e-3);
    }

    #[test]
    fn nan_outside_domain() {
        assert!(ln_gamma(0.0f64).is_nan());
        assert!(ln_gamma(-1.5f64).is_nan());
        assert!(digamma(-0.1f64).is_nan());
        assert!(trigamma(0.0f64).is_nan());
        assert!(ln_beta(-1.0f64, 2.0).is_nan());
    }
}
