//! Exact-repair minimum-storage constructions: the alpha = 1 code for any
//! (n, k), and the hybrid code for alpha*n/r >= m + alpha*t with
//! interference-aligned data-node repair.

mod alpha1;
mod hybrid;

pub use alpha1::{build_alpha1, Alpha1Code};
pub use hybrid::{admissible_hybrid, field_bound_hybrid, search_hybrid, HybridMsrrCode};

use crate::fieldalg::FieldMatrix;

/// Visit every l-combination of 0..n in lexicographic order. The callback
/// returns false to stop early; the function reports whether every visited
/// combination returned true.
pub(crate) fn for_each_combination(
    n: usize,
    l: usize,
    mut f: impl FnMut(&[usize]) -> bool,
) -> bool {
    if l > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..l).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let mut i = l;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] != i + n - l {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..l {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Fault-tolerance condition of a systematic code whose data node number `i`
/// holds the identity rows [i*alpha, (i+1)*alpha): for every l up to
/// min(k, n-k), each l-subset of data row blocks against each l-subset of
/// coded nodes must form a non-singular square sub-matrix.
///
/// `coded_cols[j]` lists the generator columns stored by coded node j.
pub(crate) fn block_fault_tolerance(
    gen: &FieldMatrix,
    alpha: usize,
    k: usize,
    coded_cols: &[Vec<usize>],
) -> bool {
    let coded = coded_cols.len();
    for l in 1..=k.min(coded) {
        let ok = for_each_combination(k, l, |data_pick| {
            for_each_combination(coded, l, |coded_pick| {
                let rows: Vec<usize> = data_pick
                    .iter()
                    .flat_map(|&i| (i * alpha)..(i + 1) * alpha)
                    .collect();
                let cols: Vec<usize> = coded_pick
                    .iter()
                    .flat_map(|&j| coded_cols[j].iter().copied())
                    .collect();
                gen.select_rows(&rows).select_columns(&cols).is_nonsingular()
            })
        });
        if !ok {
            return false;
        }
    }
    true
}

/// The (n, k) recovery property by direct rank test: every k-subset of nodes
/// must stack to a full-rank system. `node_cols[i]` lists the generator
/// columns stored by node i.
pub(crate) fn any_k_recovery(gen: &FieldMatrix, node_cols: &[Vec<usize>], k: usize) -> bool {
    let b = gen.rows();
    for_each_combination(node_cols.len(), k, |nodes| {
        let cols: Vec<usize> = nodes
            .iter()
            .flat_map(|&i| node_cols[i].iter().copied())
            .collect();
        gen.select_columns(&cols).rank() == b
    })
}
