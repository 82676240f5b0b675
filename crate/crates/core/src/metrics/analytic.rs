use statrs::function::erf::erfc;
use statrs::function::gamma::ln_gamma;

/// Standard normal tail Q(x) = Pr(N(0,1) > x).
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Uncoded BPSK over AWGN: ½·erfc(√SNR).
pub fn ber_bpsk_awgn(snr_linear: f64) -> f64 {
    0.5 * erfc(snr_linear.max(0.0).sqrt())
}

/// Binary DPSK with differential detection: ½·exp(−Eb/N0).
pub fn dpsk_ber_awgn(ebno_linear: f64) -> f64 {
    0.5 * (-ebno_linear).exp()
}

fn ln_binomial_pmf(n: usize, i: usize, p: f64) -> f64 {
    let ln_choose =
        ln_gamma(n as f64 + 1.0) - ln_gamma(i as f64 + 1.0) - ln_gamma((n - i) as f64 + 1.0);
    ln_choose + i as f64 * p.ln() + (n - i) as f64 * (-p).ln_1p()
}

/// Pr(X ≤ t) for X ~ Binomial(n, p), summed in log space.
fn binomial_cdf(n: usize, t: usize, p: f64) -> f64 {
    if t >= n || p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return 0.0;
    }
    let sum: f64 = (0..=t).map(|i| ln_binomial_pmf(n, i, p).exp()).sum();
    sum.min(1.0)
}

/// Pr(X > t) summed directly over the upper tail, for accuracy near 1 − CDF ≈ 0.
fn binomial_sf(n: usize, t: usize, p: f64) -> f64 {
    if t >= n || p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    let sum: f64 = (t + 1..=n).map(|i| ln_binomial_pmf(n, i, p).exp()).sum();
    sum.min(1.0)
}

/// Probability of at most `t` independent bit errors in `n` bits.
pub fn be_cdf_analytic(n: usize, t: usize, p_b: f64) -> f64 {
    binomial_cdf(n, t, p_b)
}

/// ⌊S_b(0.5 − δ)⌋: a block is insecure-enough when its error count exceeds this.
pub fn error_threshold(s_b: usize, delta: f64) -> usize {
    // The epsilon keeps exact products such as 100·0.35 from flooring to 34.
    (s_b as f64 * (0.5 - delta) + 1e-9).floor().max(0.0) as usize
}

/// Exact Pr(P̂_b > 0.5 − δ) for iid errors with probability `p_b` over `s_b` bits.
pub fn ber_cdf_ac_exact_iid(s_b: usize, delta: f64, p_b: f64) -> f64 {
    if delta > 0.5 {
        // Every proportion, including zero, exceeds a negative threshold.
        return 1.0;
    }
    let thr = error_threshold(s_b, delta);
    if thr == 0 && delta >= 0.5 {
        return binomial_sf(s_b, 0, p_b);
    }
    binomial_sf(s_b, thr, p_b)
}

/// Limit of the metric as Eb/N0 → −∞: Q(−2δ√S_b).
pub fn limiting_value(delta: f64, s_b: usize) -> f64 {
    q_function(-2.0 * delta * (s_b as f64).sqrt())
}

/// h(p) in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// SNR (dB) at which the uncoded BPSK block-error CDF Pr(E ≤ t) crosses
/// `level`, by bisection on [−40, 40] dB. Since the CDF increases with SNR this
/// is both the smallest SNR above the level and the largest SNR below it.
pub fn snr_threshold_db(n: usize, t: usize, level: f64) -> Option<f64> {
    let f = |db: f64| be_cdf_analytic(n, t, ber_bpsk_awgn(10f64.powf(db / 10.0))) - level;
    let (mut lo, mut hi) = (-40.0, 40.0);
    if f(lo) > 0.0 || f(hi) < 0.0 {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
