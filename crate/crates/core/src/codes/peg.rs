//! Progressive edge growth construction of column-regular parity-check graphs.
//!
//! Used once to generate the committed LDPC fixture; kept in the library so
//! the fixture can be regenerated and audited.

use std::collections::VecDeque;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::rng::below;

/// Check-node adjacency lists of a PEG graph with `n` variables of degree
/// `column_weight` and `m` checks.
///
/// Each new edge of variable `v` goes to a check at maximum graph distance
/// from `v` (or unreachable from it), choosing the lowest current check
/// degree and breaking remaining ties uniformly with `rng`.
pub fn progressive_edge_growth<R: RngCore + ?Sized>(
    n: usize,
    m: usize,
    column_weight: usize,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>> {
    if column_weight == 0 || column_weight > m {
        return Err(Error::invalid(
            "column_weight",
            format!("{column_weight} not in 1..={m}"),
        ));
    }
    let mut check_adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut var_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for _ in 0..column_weight {
            let candidates = if var_adj[v].is_empty() {
                (0..m).collect()
            } else {
                farthest_checks(v, &var_adj, &check_adj)
            };
            let min_deg = candidates
                .iter()
                .map(|&c| check_adj[c].len())
                .min()
                .unwrap_or(0);
            let lowest: Vec<usize> = candidates
                .into_iter()
                .filter(|&c| check_adj[c].len() == min_deg)
                .collect();
            let c = lowest[below(rng, lowest.len() as u64) as usize];
            check_adj[c].push(v);
            var_adj[v].push(c);
        }
    }
    for vars in &mut check_adj {
        vars.sort_unstable();
    }
    Ok(check_adj)
}

/// Checks not yet reachable from `v`, or, if the whole component is reached,
/// those discovered at the last BFS depth. Checks adjacent to `v` are excluded.
fn farthest_checks(v: usize, var_adj: &[Vec<usize>], check_adj: &[Vec<usize>]) -> Vec<usize> {
    let m = check_adj.len();
    let mut check_seen = vec![false; m];
    let mut var_seen = vec![false; var_adj.len()];
    var_seen[v] = true;
    let mut frontier: Vec<usize> = var_adj[v].clone();
    for &c in &frontier {
        check_seen[c] = true;
    }
    let mut reached = frontier.len();
    loop {
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &c in &frontier {
            for &u in &check_adj[c] {
                if !var_seen[u] {
                    var_seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        let mut next = Vec::new();
        for u in queue {
            for &c in &var_adj[u] {
                if !check_seen[c] {
                    check_seen[c] = true;
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            // Component exhausted: prefer unreachable checks if any remain.
            if reached < m {
                return (0..m).filter(|&c| !check_seen[c]).collect();
            }
            let last: Vec<usize> = frontier
                .into_iter()
                .filter(|c| !var_adj[v].contains(c))
                .collect();
            if last.is_empty() {
                return (0..m).filter(|c| !var_adj[v].contains(c)).collect();
            }
            return last;
        }
        reached += next.len();
        if reached == m {
            // Every check becomes reachable at this depth: the new ones are farthest.
            return next;
        }
        frontier = next;
    }
}

/// Reorders columns so that the last `m` columns of H are invertible,
/// returning the reordered adjacency lists. Column permutations keep the
/// degree profile and girth.
pub fn systematic_column_order(n: usize, checks: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let m = checks.len();
    let mut h = BitMatrix::zeros(m, n);
    for (c, vars) in checks.iter().enumerate() {
        for &v in vars {
            h.set(c, v, 1);
        }
    }
    // Pivot search from the right so parity positions stay near the end.
    let reversed: Vec<usize> = (0..n).rev().collect();
    let pivots_rev = pivot_columns(&h.select_columns(&reversed));
    if pivots_rev.len() < m {
        return Err(Error::SingularMatrix {
            rank: pivots_rev.len(),
            dim: m,
        });
    }
    let mut is_pivot = vec![false; n];
    let mut parity: Vec<usize> = pivots_rev.iter().map(|&j| n - 1 - j).collect();
    parity.sort_unstable();
    for &p in &parity {
        is_pivot[p] = true;
    }
    let order: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).chain(parity).collect();
    let mut new_index = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    Ok(checks
        .iter()
        .map(|vars| {
            let mut mapped: Vec<usize> = vars.iter().map(|&v| new_index[v]).collect();
            mapped.sort_unstable();
            mapped
        })
        .collect())
}

fn pivot_columns(h: &BitMatrix) -> Vec<usize> {
    let mut rows: Vec<Vec<u8>> = (0..h.rows())
        .map(|r| (0..h.cols()).map(|c| h.get(r, c)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..h.cols() {
        if rank == rows.len() {
            break;
        }
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] == 1) {
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] == 1 {
                    row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            pivots.push(col);
            rank += 1;
        }
    }
    pivots
}
