//! Systematic LDPC code with a flooding sum-product decoder.
//!
//! Fixture format (plain text): `#` lines are comments, the first remaining
//! line holds `n m`, then exactly `m` lines follow, one per check node, each
//! listing the 0-based variable indices of that check separated by spaces.
//! The last `m` columns of H must form an invertible matrix: positions `0..k`
//! carry the message and `k..n` the parity.

use std::path::Path;

use super::{DecodeOutcome, DecodeStatus};
use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::Real;

pub const DEFAULT_MAX_ITERS: usize = 50;
/// Magnitude bound on channel LLRs and on every decoder message.
pub const LLR_CLAMP: f64 = 25.0;

const FIXTURE_1056_880: &str = include_str!("../../fixtures/ldpc_1056_880.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdpcCode {
    n: usize,
    k: usize,
    checks: Vec<Vec<usize>>,
    /// Variable of each edge; edges are numbered check by check.
    edge_var: Vec<usize>,
    check_start: Vec<usize>,
    /// Edge ids of each variable.
    var_edges: Vec<usize>,
    var_start: Vec<usize>,
    /// parity = parity_map · message
    parity_map: BitMatrix,
}

/// Output of [`LdpcCode::decode`].
#[derive(Debug, Clone, PartialEq)]
pub struct LdpcOutcome<T> {
    /// Message estimate (systematic positions `0..k`) and status.
    pub decoded: DecodeOutcome,
    /// Hard decisions on all `n` positions.
    pub codeword: BitVector,
    /// Final a-posteriori LLRs on all `n` positions; positive favours 0.
    pub llrs: Vec<T>,
}

impl LdpcCode {
    /// The committed (1056, 880) fixture: column weight 3, no 4-cycles.
    pub fn fixture() -> Result<Self> {
        let code = Self::from_fixture_str(FIXTURE_1056_880)?;
        if (code.n, code.k) != (1056, 880) {
            return Err(Error::Fixture(format!(
                "expected (1056, 880), found ({}, {})",
                code.n, code.k
            )));
        }
        if let Some(w) = code.column_weights().iter().find(|&&w| w != 3) {
            return Err(Error::Fixture(format!("column weight {w}, expected 3")));
        }
        if code.girth_at_least_six() {
            Ok(code)
        } else {
            Err(Error::Fixture("parity-check graph has a 4-cycle".into()))
        }
    }

    /// Text of the committed fixture.
    pub fn fixture_text() -> &'static str {
        FIXTURE_1056_880
    }

    pub fn from_fixture_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        Self::from_fixture_str(&text)
    }

    pub fn from_fixture_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Fixture("missing `n m` header".into()))?;
        let dims: Vec<usize> = parse_indices(header)?;
        let [n, m] = dims[..] else {
            return Err(Error::Fixture(format!("header `{header}` must be `n m`")));
        };
        let checks = lines.map(parse_indices).collect::<Result<Vec<_>>>()?;
        if checks.len() != m {
            return Err(Error::Fixture(format!(
                "header declares {m} checks, found {}",
                checks.len()
            )));
        }
        Self::from_checks(n, checks)
    }

    /// Builds the code from check-node adjacency lists.
    pub fn from_checks(n: usize, checks: Vec<Vec<usize>>) -> Result<Self> {
        let m = checks.len();
        if m == 0 || m >= n {
            return Err(Error::Fixture(format!("need 0 < m < n, got n={n}, m={m}")));
        }
        let mut h = BitMatrix::zeros(m, n);
        for (c, vars) in checks.iter().enumerate() {
            for &v in vars {
                if v >= n {
                    return Err(Error::Fixture(format!("check {c}: index {v} >= n = {n}")));
                }
                if h.get(c, v) == 1 {
                    return Err(Error::Fixture(format!("check {c}: duplicate index {v}")));
                }
                h.set(c, v, 1);
            }
        }
        let k = n - m;
        let msg_cols: Vec<usize> = (0..k).collect();
        let parity_cols: Vec<usize> = (k..n).collect();
        let b_inv = h.select_columns(&parity_cols).invert().map_err(|_| {
            Error::Fixture("last n-k columns of H are singular (not in systematic order)".into())
        })?;
        let parity_map = b_inv.mul(&h.select_columns(&msg_cols))?;

        let mut edge_var = Vec::new();
        let mut check_start = vec![0];
        for vars in &checks {
            edge_var.extend_from_slice(vars);
            check_start.push(edge_var.len());
        }
        let mut per_var: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &v) in edge_var.iter().enumerate() {
            per_var[v].push(e);
        }
        let mut var_edges = Vec::with_capacity(edge_var.len());
        let mut var_start = vec![0];
        for edges in per_var {
            var_edges.extend(edges);
            var_start.push(var_edges.len());
        }
        Ok(Self {
            n,
            k,
            checks,
            edge_var,
            check_start,
            var_edges,
            var_start,
            parity_map,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn checks(&self) -> &[Vec<usize>] {
        &self.checks
    }

    pub fn column_weights(&self) -> Vec<usize> {
        (0..self.n)
            .map(|v| self.var_start[v + 1] - self.var_start[v])
            .collect()
    }

    /// True when no two checks share more than one variable.
    pub fn girth_at_least_six(&self) -> bool {
        let mut seen = vec![usize::MAX; self.checks.len()];
        for (c, vars) in self.checks.iter().enumerate() {
            for &v in vars {
                for &e in &self.var_edges[self.var_start[v]..self.var_start[v + 1]] {
                    let other = self.check_of_edge(e);
                    if other == c {
                        continue;
                    }
                    if seen[other] == c {
                        return false;
                    }
                    seen[other] = c;
                }
            }
        }
        true
    }

    fn check_of_edge(&self, e: usize) -> usize {
        self.check_start.partition_point(|&s| s <= e) - 1
    }

    /// Dense parity-check matrix.
    pub fn parity_check_matrix(&self) -> BitMatrix {
        let mut h = BitMatrix::zeros(self.checks.len(), self.n);
        for (c, vars) in self.checks.iter().enumerate() {
            for &v in vars {
                h.set(c, v, 1);
            }
        }
        h
    }

    /// Systematic generator [I_k | Pᵀ].
    pub fn generator_matrix(&self) -> BitMatrix {
        let mut g = BitMatrix::zeros(self.k, self.n);
        for i in 0..self.k {
            g.set(i, i, 1);
            for p in 0..self.n - self.k {
                g.set(i, self.k + p, self.parity_map.get(p, i));
            }
        }
        g
    }

    pub fn to_fixture_string(&self, comment: &str) -> String {
        let mut out = String::new();
        for line in comment.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!("{} {}\n", self.n, self.checks.len()));
        for vars in &self.checks {
            let row: Vec<String> = vars.iter().map(usize::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn encode(&self, msg: &BitVector) -> Result<BitVector> {
        check_len(self.k, msg.len())?;
        let parity = self.parity_map.mul_vec(msg)?;
        Ok(msg.concat(&parity))
    }

    pub fn syndrome_is_zero(&self, word: &[u8]) -> bool {
        self.checks
            .iter()
            .all(|vars| vars.iter().fold(0u8, |acc, &v| acc ^ word[v]) == 0)
    }

    /// Log-domain sum-product decoding with a flooding schedule.
    ///
    /// Check nodes use the tanh rule with forward-backward products, so no
    /// division by a near-zero tanh is needed. Decoding stops as soon as the
    /// hard decisions satisfy every check and no position has a zero
    /// posterior. Exhausting `max_iters` yields [`DecodeStatus::Failure`].
    pub fn decode<T: Real>(&self, llrs: &[T], max_iters: usize) -> Result<LdpcOutcome<T>> {
        check_len(self.n, llrs.len())?;
        if max_iters == 0 {
            return Err(Error::invalid("max_iters", "must be at least 1"));
        }
        if let Some(index) = llrs.iter().position(|l| !l.is_finite()) {
            return Err(Error::NonFiniteLlr { index });
        }
        let clamp = T::of(LLR_CLAMP);
        let half = T::of(0.5);
        let two = T::of(2.0);
        let channel: Vec<T> = llrs.iter().map(|&l| l.max(-clamp).min(clamp)).collect();
        let mut posterior = channel.clone();
        let mut hard = vec![0u8; self.n];

        let decide = |post: &[T], hard: &mut [u8]| -> bool {
            let mut erased = false;
            for (h, &p) in hard.iter_mut().zip(post) {
                *h = (p < T::zero()) as u8;
                erased |= p == T::zero();
            }
            !erased && self.syndrome_is_zero(hard)
        };

        let mut converged = decide(&posterior, &mut hard);
        let mut iterations = 0;
        if !converged {
            let mut v2c: Vec<T> = self.edge_var.iter().map(|&v| channel[v]).collect();
            let mut c2v = vec![T::zero(); self.edge_var.len()];
            let mut tanhs = Vec::new();
            let mut suffix = Vec::new();
            while iterations < max_iters {
                iterations += 1;
                for c in 0..self.checks.len() {
                    let (s, e) = (self.check_start[c], self.check_start[c + 1]);
                    tanhs.clear();
                    tanhs.extend(v2c[s..e].iter().map(|&m| (m * half).tanh()));
                    suffix.clear();
                    suffix.resize(e - s + 1, T::one());
                    for i in (0..e - s).rev() {
                        suffix[i] = suffix[i + 1] * tanhs[i];
                    }
                    let mut prefix = T::one();
                    for i in 0..e - s {
                        let extrinsic = (two * (prefix * suffix[i + 1]).atanh())
                            .max(-clamp)
                            .min(clamp);
                        c2v[s + i] = extrinsic;
                        prefix *= tanhs[i];
                    }
                }
                for v in 0..self.n {
                    let edges = &self.var_edges[self.var_start[v]..self.var_start[v + 1]];
                    let total = edges.iter().fold(channel[v], |acc, &e| acc + c2v[e]);
                    posterior[v] = total;
                    for &e in edges {
                        v2c[e] = (total - c2v[e]).max(-clamp).min(clamp);
                    }
                }
                if decide(&posterior, &mut hard) {
                    converged = true;
                    break;
                }
            }
        }

        let codeword = BitVector::from_lsb(hard);
        let status = if converged {
            let corrected = channel
                .iter()
                .zip(codeword.iter())
                .filter(|(&l, b)| ((l < T::zero()) as u8) != *b)
                .count();
            DecodeStatus::Success { corrected }
        } else {
            DecodeStatus::Failure
        };
        Ok(LdpcOutcome {
            decoded: DecodeOutcome {
                bits: codeword.slice(0..self.k),
                status,
                iterations,
            },
            codeword,
            llrs: posterior,
        })
    }
}

fn parse_indices(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| Error::Fixture(format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}
