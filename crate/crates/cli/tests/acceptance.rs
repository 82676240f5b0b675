//! Acceptance criteria 1 to 11. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.
//!
//! cargo test --release -p wiretap-cli --test acceptance

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use wiretap_secrecy::codes::{BchCode, DecodeStatus, KeyedInterleaver, LdpcCode, Scrambler};
use wiretap_secrecy::gf2::BitVector;
use wiretap_secrecy::llr::{kl_vs_ber_sweep, spearman, LlrPartition};
use wiretap_secrecy::metrics::{
    be_cdf_analytic, be_cdf_mc, ber_bpsk_awgn, ber_cdf_ac_exact_iid, ber_cdf_ac_mc, limiting_value,
    snr_threshold_db, Axis, CurvePoint, MetricCurve,
};
use wiretap_secrecy::modem::{bpsk_modulate, db_to_linear, dpsk_demodulate, dpsk_modulate};
use wiretap_secrecy::rng::{below, domain, StreamKey};
use wiretap_secrecy::scenarios::{
    run_keyed_scenario, run_scrambler_scenario, DpskBchScenario, IidFlipScenario,
    KeyedJammingScenario, ScramblerBchScenario, UncodedBpskScenario,
};

const SEED: u64 = 1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn c1() -> Outcome {
    let b0 = ber_bpsk_awgn(db_to_linear(0.0));
    let b3 = ber_bpsk_awgn(db_to_linear(-3.0));
    let e0 = be_cdf_analytic(127, 10, b0);
    let e3 = be_cdf_analytic(127, 10, b3);
    let pass = within(b0, 0.0786, 0.0005)
        && within(b3, 0.158, 0.002)
        && within(e0, 0.58, 0.01)
        && within(e3, 0.006, 0.002);
    outcome(
        pass,
        format!("BER(0 dB)={b0:.5} BER(-3 dB)={b3:.5} BE-CDF(0 dB)={e0:.4} BE-CDF(-3 dB)={e3:.5}"),
    )
}

fn c2() -> Outcome {
    let hi = snr_threshold_db(127, 10, 0.99);
    let lo = snr_threshold_db(127, 10, 0.01);
    let pass =
        hi.is_some_and(|x| within(x, 1.95, 0.05)) && lo.is_some_and(|x| within(x, -2.78, 0.05));
    outcome(
        pass,
        format!("Pr(E<=10)>0.99 above {hi:?} dB, <0.01 below {lo:?} dB"),
    )
}

fn c3() -> Outcome {
    let v = limiting_value(0.05, 753);
    let zero_exact = (1..=4096).all(|s| limiting_value(0.0, s) == 0.5);
    outcome(
        within(v, 0.9970, 0.0005) && zero_exact,
        format!("L(0.05, 753)={v:.5}, L(0, S_b)=0.5 exactly: {zero_exact}"),
    )
}

fn c4() -> Outcome {
    let sim = UncodedBpskScenario::new(127).unwrap();
    let grid: Vec<f64> = (-6..=6).map(f64::from).collect();
    let mut agree = 0;
    let mut worst = String::new();
    for &x in &grid {
        let mc = be_cdf_mc(&sim, 10, x, 100_000, SEED).unwrap();
        let exact = be_cdf_analytic(127, 10, ber_bpsk_awgn(db_to_linear(x)));
        if mc.agrees_with(exact, 3.0) {
            agree += 1;
        } else {
            worst += &format!(" [{x} dB: mc {:.5} exact {exact:.5}]", mc.p_hat);
        }
    }
    let frac = agree as f64 / grid.len() as f64;
    outcome(
        frac >= 0.95,
        format!("{agree}/{} grid points within 3 sigma{worst}", grid.len()),
    )
}

fn c5() -> Outcome {
    let mut ok = 0;
    let mut total = 0;
    let mut misses = String::new();
    for (i, &s_b) in [64usize, 184, 753].iter().enumerate() {
        for (j, &delta) in [0.05, 0.15, 0.25].iter().enumerate() {
            // Half a standard deviation below the threshold keeps the exact value away from 0 and 1.
            let p = 0.5 - delta - 0.25 / (s_b as f64).sqrt();
            let sim = IidFlipScenario::new(s_b, p).unwrap();
            let seed = SEED + (3 * i + j) as u64;
            let mc = ber_cdf_ac_mc(&sim, delta, s_b, 0.0, 20_000, seed).unwrap();
            let exact = ber_cdf_ac_exact_iid(s_b, delta, p);
            total += 1;
            if mc.agrees_with(exact, 3.0) {
                ok += 1;
            } else {
                misses += &format!(
                    " [S_b={s_b} d={delta}: mc {:.4} exact {exact:.4}]",
                    mc.p_hat
                );
            }
        }
    }
    outcome(
        ok == total,
        format!("{ok}/{total} configurations within 3 sigma{misses}"),
    )
}

fn c6() -> Outcome {
    let mut ok = 0;
    let mut total = 0;
    let mut parts = Vec::new();
    for order in [2, 4] {
        let sim = DpskBchScenario::bch_127_92(order).unwrap();
        for delta in [0.05, 0.1, 0.15] {
            let mc = ber_cdf_ac_mc(&sim, delta, 184, -20.0, 10_000, SEED).unwrap();
            let lim = limiting_value(delta, 184);
            let agree = mc.agrees_with(lim, 3.0);
            total += 1;
            ok += agree as usize;
            parts.push(format!(
                "L={order} d={delta}: {:.4} vs {lim:.4}{}",
                mc.p_hat,
                if agree { "" } else { " x" }
            ));
        }
    }
    outcome(
        ok == total,
        format!("{ok}/{total} agree; {}", parts.join(", ")),
    )
}

fn c7() -> Outcome {
    let mut rng = StreamKey::new(SEED, domain::TEST, 7).trial(0);
    let bch = BchCode::new(7, 10).unwrap();
    let mut bch_ok = true;
    for w in 1..=10usize {
        for _ in 0..10_000 {
            let msg = BitVector::random(64, &mut rng);
            let cw = bch.encode(&msg).unwrap();
            let mut word = cw.clone();
            let mut pos: Vec<usize> = (0..127).collect();
            for i in 0..w {
                let j = i + below(&mut rng, (127 - i) as u64) as usize;
                pos.swap(i, j);
                word.flip(pos[i]);
            }
            let out = bch.decode(&word).unwrap();
            bch_ok &= out.status == DecodeStatus::Success { corrected: w } && out.bits == msg;
        }
    }
    let ldpc = LdpcCode::fixture().unwrap();
    let mut ldpc_ok = true;
    for _ in 0..100 {
        let msg = BitVector::random(ldpc.k(), &mut rng);
        let llrs: Vec<f64> = bpsk_modulate::<f64>(&ldpc.encode(&msg).unwrap())
            .iter()
            .map(|x| 10.0 * x)
            .collect();
        let out = ldpc.decode(&llrs, 50).unwrap();
        ldpc_ok &=
            out.decoded.is_success() && out.decoded.iterations <= 1 && out.decoded.bits == msg;
    }
    let mut trips = true;
    let s = Scrambler::random(64, &mut rng).unwrap();
    for _ in 0..1000 {
        let m = BitVector::random(64, &mut rng);
        trips &= s.descramble(&s.scramble(&m).unwrap()).unwrap() == m;
        let il = KeyedInterleaver::from_key(&BitVector::random(64, &mut rng), 753).unwrap();
        let m = BitVector::random(753, &mut rng);
        trips &= il.deinterleave(&il.interleave(&m).unwrap()).unwrap() == m;
        for order in [2, 4] {
            let m = BitVector::random(184, &mut rng);
            trips &=
                dpsk_demodulate(&dpsk_modulate::<f64>(&m, order).unwrap(), order).unwrap() == m;
        }
    }
    outcome(
        bch_ok && ldpc_ok && trips,
        format!("BCH weights 1..10 x 10^4: {bch_ok}; LDPC noiseless <= 1 iteration: {ldpc_ok}; round trips x 10^3: {trips}"),
    )
}

/// a ≥ b up to three standard errors of the difference.
fn not_below(a: &CurvePoint, b: &CurvePoint) -> bool {
    let var = |p: &CurvePoint| p.value * (1.0 - p.value) / p.trials.max(1) as f64;
    a.value - b.value >= -3.0 * (var(a) + var(b)).sqrt()
}

fn value_at(c: &MetricCurve, x: f64) -> f64 {
    c.points.iter().find(|p| p.x == x).map(|p| p.value).unwrap()
}

fn c8() -> Outcome {
    let ldpc = Arc::new(LdpcCode::fixture().unwrap());
    let grid: Vec<f64> = (0..=8).map(f64::from).collect();
    let trials = 10_000;
    let mut be = Vec::new();
    for alpha in [0.2, 0.7, 1.0] {
        let scn = KeyedJammingScenario::new(ldpc.clone(), alpha).unwrap();
        be.push(
            run_keyed_scenario(&scn, &grid, Axis::SnrDb, 10, &[], trials, SEED)
                .unwrap()
                .be_cdf
                .unwrap(),
        );
    }
    let crossing = be[0].first_crossing(0.99).ok();
    let a = crossing.is_some_and(|x| (5.5..=7.5).contains(&x));
    let at4 = value_at(&be[1], 4.0);
    let b = at4 <= 0.02;

    let eve = KeyedJammingScenario::new(ldpc, 0.7).unwrap();
    let ebno = [3.5, 4.0, 4.7, 5.5];
    let ac = run_keyed_scenario(&eve, &ebno, Axis::EbN0Db, 10, &[0.05], trials, SEED)
        .unwrap()
        .ber_cdf
        .remove(0);
    let c = ac.points.iter().all(|p| p.value >= 0.98);

    let d = (0..grid.len()).all(|i| {
        not_below(&be[0].points[i], &be[1].points[i])
            && not_below(&be[1].points[i], &be[2].points[i])
    });
    let fmt = |c: &MetricCurve| {
        c.values()
            .iter()
            .map(|v| format!("{v:.4}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    outcome(
        a && b && c && d,
        format!(
            "alpha=0.2 0.99-crossing {crossing:?} dB in [5.5,7.5]: {a}; alpha=0.7 BE-CDF(4 dB)={at4:.4} <= 0.02: {b}; \
             alpha=0.7 BER-CDF^ac(Eb/N0 {ebno:?}) = [{}] >= 0.98: {c}; ordering: {d}; \
             BE-CDF 0..8 dB alpha=0.2 [{}] alpha=0.7 [{}] alpha=1.0 [{}]",
            fmt(&ac),
            fmt(&be[0]),
            fmt(&be[1]),
            fmt(&be[2])
        ),
    )
}

fn c9() -> Outcome {
    let scn = KeyedJammingScenario::new(Arc::new(LdpcCode::fixture().unwrap()), 0.0).unwrap();
    let grid = [
        -30.0, -25.0, -20.0, -15.0, -10.0, -7.0, -5.0, -3.0, -1.0, 0.0, 1.0, 2.0,
    ];
    let pts = kl_vs_ber_sweep(&scn, &grid, 200, SEED).unwrap();
    let valid: Vec<_> = pts.iter().filter(|p| p.divergence.is_some()).collect();
    let high: Vec<_> = valid.iter().filter(|p| p.ber >= 0.45).collect();
    let a = !high.is_empty() && high.iter().all(|p| p.divergence.unwrap() <= 0.05);
    let rho = spearman(
        &valid.iter().map(|p| p.ber).collect::<Vec<_>>(),
        &valid
            .iter()
            .map(|p| p.divergence.unwrap())
            .collect::<Vec<_>>(),
    )
    .unwrap_or(f64::NAN);
    let b = rho <= -0.9;

    // Gaussian pairs with closed-form divergence, in bits.
    let mut rng = StreamKey::new(SEED, domain::TEST, 9).trial(0);
    let mut normal = |m: f64, s: f64, n: usize| -> Vec<f64> {
        use rand_distr::Distribution;
        let d = rand_distr::Normal::new(m, s).unwrap();
        (0..n).map(|_| d.sample(&mut rng)).collect()
    };
    let ln2 = std::f64::consts::LN_2;
    let cases = [
        (1.0, 1.0, -1.0, 1.0, 2.0 / ln2),
        (0.5, 1.0, 0.0, 1.0, 0.125 / ln2),
        (0.0, 1.0, 0.0, 2.0, (2f64.ln() + 1.0 / 8.0 - 0.5) / ln2),
    ];
    let mut oracle = true;
    let mut ds = Vec::new();
    for (mp, sp, mq, sq, want) in cases {
        let part = LlrPartition {
            correct_samples: normal(mp, sp, 1_000_000),
            error_samples: normal(mq, sq, 1_000_000),
        };
        let d = part.divergence().unwrap();
        oracle &= within(d, want, 0.05);
        ds.push(format!("{d:.4}/{want:.4}"));
    }
    let fmt: Vec<_> = pts
        .iter()
        .map(|p| {
            format!(
                "{}:{:.3}/{:.4}",
                p.snr_db,
                p.ber,
                p.divergence.unwrap_or(f64::NAN)
            )
        })
        .collect();
    outcome(
        a && b && oracle,
        format!(
            "D<=0.05 where BER>=0.45: {a}; Spearman={rho:.3}: {b}; Gaussian oracle {}: {oracle}; (snr:ber/D) {}",
            ds.join(" "),
            fmt.join(" ")
        ),
    )
}

fn c10() -> Outcome {
    let scn = ScramblerBchScenario::new(SEED).unwrap();
    let grid = [-2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
    let curves = run_scrambler_scenario(&scn, &grid, &[0.15], 10_000, SEED).unwrap();
    let a = curves
        .ber_after
        .points
        .iter()
        .zip(&curves.ber_before.points)
        .all(|(a, b)| a.value >= b.value);
    let ac = &curves.ber_cdf[0];
    let at0 = value_at(ac, 0.0);
    let at4 = value_at(ac, 4.0);
    let b = at0 > 0.99;
    let c = at4 < 0.9;
    let vals: Vec<_> = ac.values().iter().map(|v| format!("{v:.4}")).collect();
    outcome(
        a && b && c,
        format!("after >= before: {a}; BER-CDF^ac(0 dB)={at0:.4} > 0.99: {b}; (4 dB)={at4:.4} < 0.9: {c}; curve [{}]", vals.join(" ")),
    )
}

fn csv_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

fn c11() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let configs = [
        ("scrambler", "kind = \"scrambler\"\n[grid]\naxis = \"ebno_db\"\nstart = -2.0\nstop = 4.0\nstep = 1.0\n[metrics]\nt = 10\ndeltas = [0.05, 0.15]\n[run]\ntrials = 2000\n"),
        ("keyed", "kind = \"keyed\"\n[grid]\naxis = \"snr_db\"\nstart = 0.0\nstop = 4.0\nstep = 1.0\n[metrics]\nt = 10\ndeltas = [0.05]\n[channel]\nalpha = 0.7\n[run]\ntrials = 200\n"),
        ("dpsk", "kind = \"dpsk_bch\"\n[grid]\naxis = \"ebno_db\"\nstart = -4.0\nstop = 6.0\nstep = 2.0\n[metrics]\nt = 5\ndeltas = [0.1]\n[code]\nbch_t = 5\n[modem]\nkind = \"dpsk\"\norder = 4\n[run]\ntrials = 2000\n"),
    ];
    let mut identical = 0;
    let mut files = 0;
    for (name, body) in configs {
        let cfg = dir.path().join(format!("{name}.toml"));
        std::fs::write(&cfg, format!("[scenario]\n{body}")).unwrap();
        let mut runs = Vec::new();
        for w in ["1", "4"] {
            let out = dir.path().join(format!("{name}_{w}"));
            let st = Command::new(env!("CARGO_BIN_EXE_wiretap"))
                .args(["sweep", "--config"])
                .arg(&cfg)
                .args(["--workers", w, "--out"])
                .arg(&out)
                .output()
                .unwrap();
            assert!(
                st.status.success(),
                "{}",
                String::from_utf8_lossy(&st.stderr)
            );
            runs.push(csv_bytes(&out));
        }
        files += runs[0].len();
        identical += (runs[0] == runs[1] && !runs[0].is_empty()) as usize;
    }
    outcome(
        identical == configs.len(),
        format!(
            "{identical}/{} configs byte-identical across --workers 1/4 ({files} CSVs)",
            configs.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 11] = [
        ("analytic anchors", c1, Some(Duration::from_secs(1))),
        ("threshold anchors", c2, Some(Duration::from_secs(1))),
        ("limiting value", c3, None),
        (
            "analytic vs Monte Carlo",
            c4,
            Some(Duration::from_secs(120)),
        ),
        ("BER-CDF^ac iid oracle", c5, Some(Duration::from_secs(60))),
        ("limit convergence", c6, Some(Duration::from_secs(300))),
        ("code properties", c7, None),
        (
            "keyed jamming scenario",
            c8,
            Some(Duration::from_secs(1800)),
        ),
        ("KL trend", c9, None),
        ("scrambler example", c10, None),
        ("determinism", c11, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let o = run();
        let dt = t0.elapsed();
        let in_time = budget.is_none_or(|b| dt <= b);
        let pass = o.pass && in_time;
        failed += !pass as usize;
        let time_note = if in_time {
            String::new()
        } else {
            format!(" over budget {budget:?}")
        };
        println!(
            "criterion {:>2} {} {name} ({:.1} s{time_note}): {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            o.detail
        );
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
