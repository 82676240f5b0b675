//! Subcommand implementations.

use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use wiretap_secrecy::codes::{BchCode, LdpcCode, Scrambler};
use wiretap_secrecy::llr::{collect_partition, spearman, KlPoint, LlrPartition};
use wiretap_secrecy::metrics::{
    be_cdf_analytic, ber_bpsk_awgn, ber_cdf_ac_exact_iid, limiting_value, security_gap,
    snr_threshold_db, Axis, BlockSimulator, CurvePoint, MetricCurve,
};
use wiretap_secrecy::modem::db_to_linear;
use wiretap_secrecy::rng::{domain, StreamKey};
use wiretap_secrecy::scenarios::{
    grid_to_snr_db, reduce_to_bsc, run_sweep, serial_correlation_study, BobSummary, BscInputs,
    DpskBchScenario, IidFlipScenario, KeyedJammingScenario, ScramblerBchScenario, SweepSpec,
    UncodedBpskScenario,
};

use crate::config::{ScenarioConfig, ScenarioKind};
use crate::output::{read_curve_csv, sha256_hex, unix_ms, Outputs, RunManifest};
use crate::CliError;

/// Loaded LDPC code and the digest of the text it came from.
fn load_ldpc(cfg: &ScenarioConfig) -> Result<(Arc<LdpcCode>, String), CliError> {
    match &cfg.code.ldpc_fixture {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("code.ldpc_fixture: {}: {e}", path.display()))
            })?;
            let code = LdpcCode::from_fixture_str(&text)
                .map_err(|e| CliError::Config(format!("code.ldpc_fixture: {e}")))?;
            Ok((Arc::new(code), sha256_hex(text.as_bytes())))
        }
        None => Ok((
            Arc::new(LdpcCode::fixture()?),
            sha256_hex(LdpcCode::fixture_text().as_bytes()),
        )),
    }
}

fn keyed(cfg: &ScenarioConfig) -> Result<(KeyedJammingScenario, String), CliError> {
    let (ldpc, digest) = load_ldpc(cfg)?;
    let scn = KeyedJammingScenario::new(ldpc, cfg.channel.alpha)?
        .with_schedule(cfg.run.key_schedule)
        .with_max_iters(cfg.code.max_iters)?;
    Ok((scn, digest))
}

/// The configured chain as a block simulator, plus the fixture digest when
/// an LDPC code is involved.
fn simulator(cfg: &ScenarioConfig) -> Result<(Box<dyn BlockSimulator>, Option<String>), CliError> {
    let bch = || BchCode::new(cfg.code.bch_m, cfg.code.bch_t);
    Ok(match cfg.scenario.kind {
        ScenarioKind::Analytic => {
            return Err(CliError::Config(
                "scenario.kind `analytic` has no simulator; use the analytic command".into(),
            ))
        }
        ScenarioKind::Uncoded => (
            Box::new(UncodedBpskScenario::new(cfg.channel.block_bits)?),
            None,
        ),
        ScenarioKind::IidFlips => {
            let p = cfg.channel.flip_probability.unwrap_or_default();
            (
                Box::new(IidFlipScenario::new(cfg.channel.block_bits, p)?),
                None,
            )
        }
        ScenarioKind::Scrambler => {
            let code = bch()?;
            let seed = cfg.code.scrambler_seed.unwrap_or(cfg.run.seed);
            let mut rng = StreamKey::new(seed, domain::SETUP, 0).trial(0);
            let s = Scrambler::random(code.k(), &mut rng)?;
            (Box::new(ScramblerBchScenario::with_parts(s, code)?), None)
        }
        ScenarioKind::DpskBch => (
            Box::new(DpskBchScenario::new(
                bch()?,
                cfg.modem.order,
                cfg.code.bch_codewords,
            )?),
            None,
        ),
        ScenarioKind::Keyed => {
            let (scn, digest) = keyed(cfg)?;
            (Box::new(scn), Some(digest))
        }
    })
}

fn finish(
    cfg: &ScenarioConfig,
    command: &str,
    mut out: Outputs,
    summary: serde_json::Value,
    fixture: Option<String>,
    started: u128,
) -> Result<RunManifest, CliError> {
    let normalized = cfg.to_normalized_toml();
    let mut summary = summary;
    summary["config"] = serde_json::to_value(cfg).map_err(CliError::runtime)?;
    summary["config_toml"] = json!(normalized);
    out.push_json("summary.json", &summary)?;
    let outputs = out.write_all(&cfg.run.out_dir)?;
    let manifest = RunManifest {
        tool: "wiretap".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        config_sha256: sha256_hex(normalized.as_bytes()),
        fixture_sha256: fixture,
        seed: cfg.run.seed,
        started_unix_ms: started,
        finished_unix_ms: unix_ms(),
        outputs,
    };
    let mut bytes = serde_json::to_vec_pretty(&manifest).map_err(CliError::runtime)?;
    bytes.push(b'\n');
    let path = cfg.run.out_dir.join("manifest.json");
    std::fs::write(&path, bytes)
        .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
    Ok(manifest)
}

fn limits(cfg: &ScenarioConfig, s_b: usize) -> Vec<serde_json::Value> {
    cfg.metrics
        .deltas
        .iter()
        .map(|&d| json!({ "delta": d, "s_b": s_b, "limiting_value": limiting_value(d, s_b) }))
        .collect()
}

/// Closed-form curves for uncoded BPSK: the BER, the binomial BE-CDF over a
/// BCH-length block and the exact iid BER-CDF. The grid is read as channel
/// SNR per bit on either axis, since there is no coding.
pub fn analytic(cfg: &ScenarioConfig) -> Result<RunManifest, CliError> {
    let started = unix_ms();
    let n = (1usize << cfg.code.bch_m) - 1;
    let t = cfg.metrics.t.unwrap_or(cfg.code.bch_t);
    if t > n {
        return Err(CliError::Config(format!("metrics.t: {t} exceeds n = {n}")));
    }
    let s_b = cfg.metrics.s_b.unwrap_or(n);
    if s_b == 0 {
        return Err(CliError::Config("metrics.s_b: must be at least 1".into()));
    }
    let axis = cfg.grid.axis;
    let grid = cfg.grid_points();
    let p: Vec<f64> = grid
        .iter()
        .map(|&x| ber_bpsk_awgn(db_to_linear(x)))
        .collect();
    let curve = |id: &str, f: &dyn Fn(f64) -> f64| {
        MetricCurve::new(
            axis,
            id,
            grid.iter()
                .zip(&p)
                .map(|(&x, &pb)| CurvePoint::exact(x, f(pb)))
                .collect(),
        )
    };
    let mut out = Outputs::default();
    out.push_curve("ber_bpsk", &curve("ber_bpsk", &|pb| pb)?)?;
    let stem = format!("be_cdf_analytic_n{n}_t{t}");
    out.push_curve(
        &stem,
        &curve(&stem, &|pb| be_cdf_analytic(n, t, pb))?
            .with_param("t", t)
            .with_param("n", n),
    )?;
    for &d in &cfg.metrics.deltas {
        let c = curve("ber_cdf_exact_iid", &|pb| ber_cdf_ac_exact_iid(s_b, d, pb))?
            .with_param("delta", d)
            .with_param("s_b", s_b);
        out.push_curve(&format!("ber_cdf_exact_iid_delta{d}"), &c)?;
    }
    let summary = json!({
        "command": "analytic",
        "n": n,
        "t": t,
        "snr_db_reliable_0_99": snr_threshold_db(n, t, 0.99),
        "snr_db_secure_0_01": snr_threshold_db(n, t, 0.01),
        "limiting_values": limits(cfg, s_b),
    });
    finish(cfg, "analytic", out, summary, None, started)
}

pub fn sweep(cfg: &ScenarioConfig) -> Result<RunManifest, CliError> {
    let started = unix_ms();
    let (sim, fixture) = simulator(cfg)?;
    let spec = SweepSpec {
        axis: cfg.grid.axis,
        grid: cfg.grid_points(),
        t: cfg.metrics.t,
        deltas: cfg.metrics.deltas.clone(),
        s_b: cfg.metrics.s_b,
        trials: cfg.run.trials,
        seed: cfg.run.seed,
    };
    let curves = run_sweep(sim.as_ref(), &spec)?;
    let mut out = Outputs::default();
    let mut listed = Vec::new();
    for (stem, c) in curves.named() {
        out.push_curve(&stem, c)?;
        listed.push(
            json!({ "file": format!("{stem}.csv"), "metric": c.metric_id, "params": c.params }),
        );
    }
    let s_b = cfg.metrics.s_b.unwrap_or(sim.bits_after_outer());
    let summary = json!({
        "command": "sweep",
        "rate": sim.rate(),
        "curves": listed,
        "limiting_values": limits(cfg, s_b),
    });
    finish(cfg, "sweep", out, summary, fixture, started)
}

fn f64_le(samples: &[f64]) -> Vec<u8> {
    samples.iter().flat_map(|v| v.to_le_bytes()).collect()
}

#[derive(Serialize)]
struct KlRow {
    snr_db: f64,
    ber: f64,
    kl_bits: Option<f64>,
    bits: u64,
    errors: u64,
    degenerate: bool,
}

/// Decoder-output LLR divergence sweep of the keyed chain.
pub fn kl(cfg: &ScenarioConfig) -> Result<RunManifest, CliError> {
    let started = unix_ms();
    if cfg.scenario.kind != ScenarioKind::Keyed {
        return Err(CliError::Config(
            "scenario.kind: the kl command needs the keyed scenario".into(),
        ));
    }
    let (scn, digest) = keyed(cfg)?;
    let snrs = grid_to_snr_db(cfg.grid.axis, &cfg.grid_points(), scn.rate())?;
    let mut out = Outputs::default();
    let mut points = Vec::new();
    for (i, &snr) in snrs.iter().enumerate() {
        let part: LlrPartition<f64> = collect_partition(&scn, snr, cfg.kl.trials, cfg.run.seed)?;
        if cfg.kl.dump_samples {
            out.push(
                format!("llr_{i:03}_correct.f64le"),
                f64_le(&part.correct_samples),
            );
            out.push(
                format!("llr_{i:03}_error.f64le"),
                f64_le(&part.error_samples),
            );
        }
        points.push(KlPoint::from_partition(snr, &part)?);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in &points {
        w.serialize(KlRow {
            snr_db: p.snr_db,
            ber: p.ber,
            kl_bits: p.divergence,
            bits: p.bits,
            errors: p.errors,
            degenerate: p.degenerate(),
        })
        .map_err(CliError::runtime)?;
    }
    out.push(
        "kl.csv",
        w.into_inner()
            .map_err(|e| CliError::runtime(e.into_error()))?,
    );
    let valid: Vec<&KlPoint> = points.iter().filter(|p| !p.degenerate()).collect();
    let rho = spearman(
        &valid.iter().map(|p| p.ber).collect::<Vec<_>>(),
        &valid
            .iter()
            .map(|p| p.divergence.unwrap_or_default())
            .collect::<Vec<_>>(),
    )
    .ok();
    let summary = json!({
        "command": "kl",
        "points": points.len(),
        "degenerate_points": points.len() - valid.len(),
        "spearman_ber_vs_kl": rho,
    });
    finish(cfg, "kl", out, summary, Some(digest), started)
}

/// Options of the reduce-bsc command beyond the config.
#[derive(Debug, Clone, Default)]
pub struct BscOptions {
    /// Existing BER-CDF^ac curve of Eve; simulated from the config when absent.
    pub curve: Option<std::path::PathBuf>,
    pub bob: Option<BobSummary>,
}

pub fn reduce_bsc(cfg: &ScenarioConfig, opts: &BscOptions) -> Result<RunManifest, CliError> {
    let started = unix_ms();
    if cfg.scenario.kind != ScenarioKind::Keyed {
        return Err(CliError::Config(
            "scenario.kind: reduce-bsc needs the keyed scenario".into(),
        ));
    }
    let (scn, digest) = keyed(cfg)?;
    let mut out = Outputs::default();
    let curve = match &opts.curve {
        Some(path) => read_curve_csv(path, cfg.grid.axis)?,
        None => {
            let spec = SweepSpec {
                axis: cfg.grid.axis,
                grid: cfg.grid_points(),
                t: None,
                deltas: vec![cfg.bsc.delta],
                s_b: None,
                trials: cfg.run.trials,
                seed: cfg.run.seed,
            };
            let c = run_sweep(&scn, &spec)?.ber_cdf.remove(0);
            out.push_curve(&format!("ber_cdf_ac_delta{}", cfg.bsc.delta), &c)?;
            c
        }
    };
    // Locate the operating point first so the supporting evidence is
    // gathered where it matters.
    let bare = BscInputs {
        eve_ber_cdf: &curve,
        rate: scn.rate(),
        bob: opts.bob,
        kl: None,
        serial: None,
    };
    let first = reduce_to_bsc(&bare, cfg.bsc.delta, cfg.bsc.confidence_target)?;
    let op_snr = grid_to_snr_db(curve.axis, &[first.operating_point_db], scn.rate())?[0];
    let serial = if cfg.bsc.correlation_blocks > 0 {
        Some(serial_correlation_study(
            &scn,
            op_snr,
            cfg.bsc.interleaver_depth,
            cfg.bsc.correlation_blocks,
            cfg.run.seed,
        )?)
    } else {
        None
    };
    let kl_point = KlPoint::from_partition(
        op_snr,
        &collect_partition(&scn, op_snr, cfg.kl.trials, cfg.run.seed)?,
    )?;
    let kl_points = [kl_point];
    let inputs = BscInputs {
        kl: Some(&kl_points),
        serial,
        ..bare
    };
    let report = reduce_to_bsc(&inputs, cfg.bsc.delta, cfg.bsc.confidence_target)?;
    out.push_json("bsc_report.json", &report)?;
    let summary = json!({ "command": "reduce-bsc", "report": report });
    finish(cfg, "reduce-bsc", out, summary, Some(digest), started)
}

/// Security gap between two curve files, in dB.
pub fn gap(
    main: &Path,
    bob_target: f64,
    eve: &Path,
    eve_target: f64,
    axis: Axis,
) -> Result<serde_json::Value, CliError> {
    let m = read_curve_csv(main, axis)?;
    let e = read_curve_csv(eve, axis)?;
    let bob_x = m.first_crossing(bob_target)?;
    let eve_x = e.last_crossing(eve_target)?;
    let gap_db = security_gap(&m, bob_target, &e, eve_target)?;
    Ok(json!({
        "axis": axis.label(),
        "bob_target": bob_target,
        "eve_target": eve_target,
        "bob_db": bob_x,
        "eve_db": eve_x,
        "gap_db": gap_db,
    }))
}
