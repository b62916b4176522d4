use rand::Rng as _;
use rand_distr::Geometric;

use super::{check_node_count, Graph, NodeId};
use crate::error::{Error, Result};
use crate::seed::rng_for;

/// Samples `G(n, λ/n)`.
///
/// The `n(n-1)/2` slots `(i, j)`, `i < j`, are visited in row-major order and
/// the gap to the next present edge is drawn from a geometric distribution, so
/// the cost is `O(n + m)` expected rather than quadratic. The output is
/// canonical and depends only on `(n, lambda, seed)`.
pub fn er_generate(n: usize, lambda: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("n must be positive"));
    }
    check_node_count(n)?;
    if !(lambda >= 0.0 && lambda <= n as f64) {
        return Err(Error::param(format!(
            "lambda = {lambda} must lie in [0, n = {n}]"
        )));
    }
    let p = lambda / n as f64;
    if p == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    let gap = Geometric::new(p).map_err(|e| Error::param(e.to_string()))?;
    let mut rng = rng_for(seed, "er", &[]);

    let n = n as u64;
    let slots = n * (n - 1) / 2;
    let mut pairs = Vec::with_capacity((slots as f64 * p * 1.05) as usize + 16);
    // (row, col) is the next unvisited slot.
    let (mut row, mut col) = (0u64, 1u64);
    'outer: loop {
        let mut skip = rng.sample(gap);
        while skip >= n - col {
            skip -= n - col;
            row += 1;
            if row + 1 >= n {
                break 'outer;
            }
            col = row + 1;
        }
        col += skip;
        pairs.push((row as NodeId, col as NodeId));
        col += 1;
        if col == n {
            row += 1;
            if row + 1 >= n {
                break;
            }
            col = row + 1;
        }
    }
    Ok(Graph::from_sorted_pairs(n as usize, &pairs))
}
