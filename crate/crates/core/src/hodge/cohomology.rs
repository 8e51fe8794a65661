//! Exact Betti numbers from ranks over the Gaussian rationals.

use crate::error::Result;
use crate::frame::FrameSpec;
use crate::matrix::OperatorMatrix;
use crate::multilinear::form::{masks_of_degree, masks_of_parity};

/// Cohomology dimensions of a differential that maps each index block into a
/// single other block. `b_k = |block_k| − rank(out of k) − rank(into k)`.
pub fn block_cohomology(d: &OperatorMatrix, blocks: &[Vec<usize>]) -> Vec<usize> {
    let all: Vec<usize> = (0..d.rows()).collect();
    blocks
        .iter()
        .map(|block| {
            let out = d.select(&all, block).rank();
            let into = d.select(block, &all).rank();
            block.len() - out - into
        })
        .collect()
}

/// Untwisted Betti numbers `b_0, …, b_m` of the Chevalley–Eilenberg complex.
pub fn betti_numbers(frame: &FrameSpec) -> Result<Vec<usize>> {
    let d = frame.ce_differential()?;
    let blocks: Vec<Vec<usize>> = (0..=frame.dim()).map(|k| masks_of_degree(frame.dim(), k)).collect();
    Ok(block_cohomology(&d, &blocks))
}

/// `(b^ev_H, b^od_H)` for the twisted differential.
pub fn twisted_betti(frame: &FrameSpec) -> Result<(usize, usize)> {
    let d = frame.twisted_d()?;
    let blocks = [masks_of_parity(frame.dim(), 0), masks_of_parity(frame.dim(), 1)];
    let b = block_cohomology(&d, &blocks);
    Ok((b[0], b[1]))
}
