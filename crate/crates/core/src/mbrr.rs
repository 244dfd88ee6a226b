//! Exact-repair minimum-bandwidth construction for all parameters: beta = 1,
//! alpha = gamma = d, B = kd - m(m-1)/2.
//!
//! The file splits into two parts. The first (k-m)d symbols, together with
//! (n-r-k+m)d global coded symbols, fill the non-relayer nodes. The second
//! part fills a symmetric d x d data matrix M2 = [[S1, S2], [S2^T, 0]];
//! each relayer stores M2 phi_i^T plus a combination of its rack's
//! non-relayer content through the columns of P. A helper relayer can strip
//! that combination locally (it sees its whole rack), recover M2 phi_i^T,
//! and answer a repair with the single symbol phi_f M2 phi_i^T.

use crate::error::{Error, Result};
use crate::fieldalg::{Field, FieldMatrix, RowSolver};
use crate::msrr::{any_k_recovery, for_each_combination};
use crate::params::{CodeParams, RackLayout};
use crate::trace::RepairTrace;
use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Field size above which the randomized search is guaranteed to succeed:
/// B * sum over i of C(n-r, k-i) C(r, i).
pub fn field_bound_mbrr(p: &CodeParams) -> u128 {
    let (n, k, r) = (p.n() as u128, p.k() as u128, p.r() as u128);
    let b = file_size(p) as u128;
    let mut sum = 0u128;
    for i in 1..=p.k().min(p.r()) as u128 {
        if k - i <= n - r {
            sum += binomial(n - r, k - i) * binomial(r, i);
        }
    }
    b * sum
}

/// B = kd - m(m-1)/2.
pub fn file_size(p: &CodeParams) -> usize {
    p.k() * p.d() - p.m() * (p.m() - 1) / 2
}

/// A verified minimum-bandwidth code.
#[derive(Debug, Clone)]
pub struct MbrrCode {
    params: CodeParams,
    field: Field,
    pub(crate) q_mat: FieldMatrix, // B x (n-r-k+m)d global encoding
    pub(crate) phi: FieldMatrix,   // d x r
    pub(crate) p_mat: FieldMatrix, // (n/r-1)d x rd
    generator: FieldMatrix,        // B x nd
    layout: RackLayout,
    exhaustive_verified: bool,
}

/// Randomized search: Phi defaults to a Vandermonde matrix (any d columns
/// independent) and is randomized on later attempts; P is drawn with nonzero
/// entries; Q is a Cauchy matrix when the field has room for one, otherwise
/// drawn at random and rank-checked. Each candidate is verified: any d
/// columns of Phi, every per-slot block of P, and the recovery property over
/// k-subsets (exhaustive up to `verify_cap` subsets, sampled beyond).
pub fn search_mbrr(
    n: usize,
    k: usize,
    r: usize,
    d: usize,
    field: Field,
    seed: u64,
    max_attempts: usize,
    verify_cap: usize,
) -> Result<MbrrCode> {
    let p = CodeParams::new(n, k, r, Some(d))?;
    if n - r < k {
        return Err(Error::UnsupportedRegime(format!(
            "need n - r >= k for the global-code decode path, got {} < {}",
            n - r,
            k
        )));
    }
    let b = file_size(&p);
    let q_cols = (n - r - k + p.m()) * d;
    let nr = p.nodes_per_rack();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let cauchy_q = if (b + q_cols) as u64 <= field.modulus() {
        let xs: Vec<u64> = (0..b as u64).collect();
        let ys: Vec<u64> = (b as u64..(b + q_cols) as u64).collect();
        Some(FieldMatrix::cauchy(field, &xs, &ys)?)
    } else {
        None
    };

    let subsets = binomial(n as u128, k as u128);
    let exhaustive = subsets <= verify_cap as u128;

    let (mut phi_fail, mut p_fail, mut q_fail, mut recover_fail) = (0usize, 0, 0, 0);
    for attempt in 0..max_attempts {
        let phi = if attempt == 0 && r as u64 <= field.modulus() - 1 {
            let points: Vec<u64> = (1..=r as u64).collect();
            FieldMatrix::vandermonde(field, &points, d)?
        } else {
            FieldMatrix::random_nonzero(field, d, r, &mut rng)
        };
        if !phi_columns_ok(&phi, d) {
            phi_fail += 1;
            continue;
        }
        let p_mat = FieldMatrix::random_nonzero(field, (nr - 1) * d, r * d, &mut rng);
        if !p_blocks_ok(&p_mat, r, nr, d) {
            p_fail += 1;
            continue;
        }
        let q_mat = match &cauchy_q {
            Some(q) => q.clone(),
            None => {
                let q = FieldMatrix::random(field, b, q_cols, &mut rng);
                if q.rank() != q_cols.min(b) {
                    q_fail += 1;
                    continue;
                }
                q
            }
        };
        let code = MbrrCode::assemble(p, field, q_mat, phi, p_mat, exhaustive);
        let ok = if exhaustive {
            code.any_k_exhaustive()
        } else {
            code.any_k_sampled(verify_cap, &mut rng)
        };
        if !ok {
            recover_fail += 1;
            continue;
        }
        return Ok(code);
    }
    Err(Error::SearchFailed {
        attempts: max_attempts,
        report: format!(
            "phi failed {phi_fail}, P blocks failed {p_fail}, Q rank failed {q_fail}, \
             recovery failed {recover_fail}"
        ),
    })
}

fn phi_columns_ok(phi: &FieldMatrix, d: usize) -> bool {
    for_each_combination(phi.cols(), d, |pick| phi.select_columns(pick).is_nonsingular())
}

fn p_blocks_ok(p_mat: &FieldMatrix, r: usize, nr: usize, d: usize) -> bool {
    for rack in 0..r {
        for slot in 1..nr {
            let block = p_mat.submatrix((slot - 1) * d..slot * d, rack * d..(rack + 1) * d);
            if !block.is_nonsingular() {
                return false;
            }
        }
    }
    true
}

impl MbrrCode {
    fn assemble(
        params: CodeParams,
        field: Field,
        q_mat: FieldMatrix,
        phi: FieldMatrix,
        p_mat: FieldMatrix,
        exhaustive_verified: bool,
    ) -> Self {
        let mut code = MbrrCode {
            params,
            field,
            q_mat,
            phi,
            p_mat,
            generator: FieldMatrix::zeros(field, 0, 0),
            layout: RackLayout::uniform(&params),
            exhaustive_verified,
        };
        code.generator = code.build_generator();
        code
    }

    /// Rebuild from serialized pieces (no re-verification; integrity is the
    /// container checksum's job).
    pub(crate) fn from_parts(
        params: CodeParams,
        field: Field,
        q_mat: FieldMatrix,
        phi: FieldMatrix,
        p_mat: FieldMatrix,
    ) -> Result<Self> {
        let d = params.d();
        let b = file_size(&params);
        let q_cols = (params.n() - params.r() - params.k() + params.m()) * d;
        if q_mat.rows() != b || q_mat.cols() != q_cols {
            return Err(Error::BadContainer("global matrix shape mismatch".into()));
        }
        if phi.rows() != d || phi.cols() != params.r() {
            return Err(Error::BadContainer("phi shape mismatch".into()));
        }
        if p_mat.rows() != (params.nodes_per_rack() - 1) * d || p_mat.cols() != params.r() * d {
            return Err(Error::BadContainer("P shape mismatch".into()));
        }
        Ok(MbrrCode::assemble(params, field, q_mat, phi, p_mat, false))
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn layout(&self) -> &RackLayout {
        &self.layout
    }

    pub fn alpha(&self) -> usize {
        self.params.d()
    }

    pub fn file_size(&self) -> usize {
        file_size(&self.params)
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    pub fn exhaustive_verified(&self) -> bool {
        self.exhaustive_verified
    }

    /// Index into the data vector for entry (row, col) of M2, or None for
    /// the zero block. S1's upper triangle is filled row-wise, then S2.
    fn m2_symbol(&self, row: usize, col: usize) -> Option<usize> {
        let (m, d, k) = (self.params.m(), self.params.d(), self.params.k());
        let base = (k - m) * d;
        let (lo, hi) = (row.min(col), row.max(col));
        if hi < m {
            // S1 upper triangle, row-wise: row i starts at i(2m - i + 1)/2
            Some(base + lo * (2 * m - lo + 1) / 2 + (hi - lo))
        } else if lo < m {
            // S2 (or its transpose)
            Some(base + m * (m + 1) / 2 + lo * (d - m) + (hi - m))
        } else {
            None
        }
    }

    /// Columns of the non-relayer encoding matrix W = [I over 0 | Q].
    fn w_col(&self, col: usize) -> Vec<u64> {
        let b = self.file_size();
        let part1 = (self.params.k() - self.params.m()) * self.params.d();
        let mut out = vec![0u64; b];
        if col < part1 {
            out[col] = 1;
        } else {
            for rr in 0..b {
                out[rr] = self.q_mat.get(rr, col - part1);
            }
        }
        out
    }

    fn build_generator(&self) -> FieldMatrix {
        let f = self.field;
        let (n, d, nr) = (self.params.n(), self.params.d(), self.params.nodes_per_rack());
        let b = self.file_size();
        let mut gen = FieldMatrix::zeros(f, b, n * d);
        for rack in 0..self.params.r() {
            let w_base = rack * (nr - 1) * d;
            for slot in 0..nr {
                let node = rack * nr + slot;
                for sym in 0..d {
                    let col = node * d + sym;
                    if slot >= 1 {
                        let w = self.w_col(w_base + (slot - 1) * d + sym);
                        for rr in 0..b {
                            gen.set(rr, col, w[rr]);
                        }
                    } else {
                        // relayer: (M2 phi_rack^T)[sym] + M1row . P column
                        for c in 0..d {
                            if let Some(idx) = self.m2_symbol(sym, c) {
                                let v = f.add(gen.get(idx, col), self.phi.get(c, rack));
                                gen.set(idx, col, v);
                            }
                        }
                        for pos in 0..(nr - 1) * d {
                            let coeff = self.p_mat.get(pos, rack * d + sym);
                            if coeff == 0 {
                                continue;
                            }
                            let w = self.w_col(w_base + pos);
                            for rr in 0..b {
                                if w[rr] != 0 {
                                    let v = f.add(gen.get(rr, col), f.mul(coeff, w[rr]));
                                    gen.set(rr, col, v);
                                }
                            }
                        }
                    }
                }
            }
        }
        gen
    }

    fn node_cols(&self, node: usize) -> Vec<usize> {
        let d = self.params.d();
        (node * d..(node + 1) * d).collect()
    }

    pub(crate) fn any_k_exhaustive(&self) -> bool {
        let cols: Vec<Vec<usize>> = (0..self.params.n()).map(|i| self.node_cols(i)).collect();
        any_k_recovery(&self.generator, &cols, self.params.k())
    }

    fn any_k_sampled(&self, samples: usize, rng: &mut ChaCha8Rng) -> bool {
        let n = self.params.n();
        let b = self.file_size();
        for _ in 0..samples {
            let mut picked: Vec<usize> = (0..n).collect();
            for i in 0..self.params.k() {
                let j = rng.gen_range(i..n);
                picked.swap(i, j);
            }
            let cols: Vec<usize> = picked[..self.params.k()]
                .iter()
                .flat_map(|&i| self.node_cols(i))
                .collect();
            if self.generator.select_columns(&cols).rank() != b {
                return false;
            }
        }
        true
    }

    /// Exhaustive recovery check over every k-subset of nodes.
    pub fn verify_recovery(&self) -> bool {
        self.any_k_exhaustive()
    }

    /// Encode B data symbols into per-node content (d symbols each).
    pub fn encode(&self, data: &[u64]) -> Result<Vec<Vec<u64>>> {
        let b = self.file_size();
        if data.len() != b {
            return Err(Error::BadInput(format!(
                "expected {} data symbols, got {}",
                b,
                data.len()
            )));
        }
        let flat = self.generator.left_mul_vec(data)?;
        Ok(flat.chunks(self.params.d()).map(|c| c.to_vec()).collect())
    }

    /// M2 phi_rack^T recovered inside a helper rack: the relayer's content
    /// minus the P-combination of the rack's non-relayer symbols.
    fn rack_m2_phi(&self, contents: &[Option<Vec<u64>>], rack: usize) -> Result<Vec<u64>> {
        let f = self.field;
        let (d, nr) = (self.params.d(), self.params.nodes_per_rack());
        let relayer = self.layout.relayer(rack);
        let rel = contents[relayer]
            .as_ref()
            .ok_or_else(|| Error::BadInput(format!("node {relayer} content missing")))?;
        let mut out = rel.clone();
        for slot in 1..nr {
            let node = self.layout.node_at(rack, slot);
            let c = contents[node]
                .as_ref()
                .ok_or_else(|| Error::BadInput(format!("node {node} content missing")))?;
            for sym in 0..d {
                for (a, &cv) in c.iter().enumerate() {
                    let coeff = self.p_mat.get((slot - 1) * d + a, rack * d + sym);
                    out[sym] = f.sub(out[sym], f.mul(coeff, cv));
                }
            }
        }
        Ok(out)
    }

    /// Exact repair of any node (relayer or not) from any d helper racks,
    /// one symbol per helper.
    pub fn repair(
        &self,
        contents: &[Option<Vec<u64>>],
        failed: usize,
        helpers: &[usize],
    ) -> Result<RepairTrace> {
        let f = self.field;
        let (d, nr) = (self.params.d(), self.params.nodes_per_rack());
        if failed >= self.params.n() || contents.len() != self.params.n() {
            return Err(Error::BadInput("node index / contents length".into()));
        }
        let host = self.layout.rack_of(failed);
        let uniq: std::collections::BTreeSet<usize> = helpers.iter().copied().collect();
        if helpers.len() != d || uniq.len() != d {
            return Err(Error::InvalidHelpers(format!("need {d} distinct helper racks")));
        }
        if uniq.contains(&host) || uniq.iter().any(|&h| h >= self.params.r()) {
            return Err(Error::InvalidHelpers(format!(
                "helper racks {helpers:?} invalid for host rack {host}"
            )));
        }

        // each helper relayer reconstructs M2 phi_h^T and sends one symbol
        let phi_f = self.phi.col(host);
        let mut received = Vec::with_capacity(d);
        let mut per_helper = BTreeMap::new();
        for &h in helpers {
            let m2phi = self.rack_m2_phi(contents, h)?;
            let mut sym = 0u64;
            for (a, &v) in m2phi.iter().enumerate() {
                sym = f.add(sym, f.mul(phi_f[a], v));
            }
            received.push(sym);
            per_helper.insert(h, 1);
        }
        // invert the d x d system over the chosen phi columns: received =
        // (phi_f M2) Phi_H, and M2 is symmetric, so this is also M2 phi_f^T
        let phi_h = self.phi.select_columns(helpers);
        let chi = phi_h.transpose().solve(&received)?;

        let slot = self.layout.slot_of(failed);
        let intra = (nr - 1) * d;
        if slot == 0 {
            // relayer: add back the P-combination of the host rack's
            // non-relayer content
            let mut content = chi;
            for s in 1..nr {
                let node = self.layout.node_at(host, s);
                let c = contents[node]
                    .as_ref()
                    .ok_or_else(|| Error::BadInput(format!("node {node} content missing")))?;
                for sym in 0..d {
                    for (a, &cv) in c.iter().enumerate() {
                        let coeff = self.p_mat.get((s - 1) * d + a, host * d + sym);
                        content[sym] = f.add(content[sym], f.mul(coeff, cv));
                    }
                }
            }
            return Ok(RepairTrace::new(content, intra, per_helper));
        }

        // non-relayer: the host relayer's content minus chi is the
        // P-combination M1row_f P_f; peel off the surviving slots and solve
        // the failed slot's d x d block of P_f
        let relayer = self.layout.relayer(host);
        let rel = contents[relayer]
            .as_ref()
            .ok_or_else(|| Error::BadInput(format!("node {relayer} content missing")))?;
        let mut rhs = Vec::with_capacity(d);
        for sym in 0..d {
            rhs.push(f.sub(rel[sym], chi[sym]));
        }
        for s in 1..nr {
            if s == slot {
                continue;
            }
            let node = self.layout.node_at(host, s);
            let c = contents[node]
                .as_ref()
                .ok_or_else(|| Error::BadInput(format!("node {node} content missing")))?;
            for sym in 0..d {
                for (a, &cv) in c.iter().enumerate() {
                    let coeff = self.p_mat.get((s - 1) * d + a, host * d + sym);
                    rhs[sym] = f.sub(rhs[sym], f.mul(coeff, cv));
                }
            }
        }
        // rhs = xi * P_block, solve the transpose
        let block = self
            .p_mat
            .submatrix((slot - 1) * d..slot * d, host * d..(host + 1) * d);
        let recovered = block.transpose().solve(&rhs)?;
        Ok(RepairTrace::new(recovered, intra, per_helper))
    }

    /// Decode the B data symbols from any k (or more) node contents.
    pub fn decode(&self, nodes: &[(usize, Vec<u64>)]) -> Result<Vec<u64>> {
        if nodes.len() < self.params.k() {
            return Err(Error::DecodeFailed(format!(
                "need at least k = {} nodes",
                self.params.k()
            )));
        }
        let d = self.params.d();
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for (node, content) in nodes {
            if content.len() != d {
                return Err(Error::BadInput(format!("node {node} has wrong symbol count")));
            }
            cols.extend(self.node_cols(*node));
            vals.extend_from_slice(content);
        }
        let solver = RowSolver::new(self.generator.select_columns(&cols))
            .map_err(|_| Error::DecodeFailed("selected nodes do not determine the data".into()))?;
        solver.solve(&vals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn flagship_gf11() -> MbrrCode {
        search_mbrr(12, 8, 4, 3, gf(11), 1, 20_000, 100_000).unwrap()
    }

    #[test]
    fn file_size_values() {
        let p = CodeParams::new(12, 8, 4, Some(3)).unwrap();
        assert_eq!(file_size(&p), 23);
        let p = CodeParams::new(9, 5, 3, Some(2)).unwrap();
        assert_eq!(file_size(&p), 10);
    }

    #[test]
    fn field_bound_values() {
        let p = CodeParams::new(12, 8, 4, Some(3)).unwrap();
        assert_eq!(field_bound_mbrr(&p), 23 * 494);
        // (9,5,3,2): B = 10, sum C(6,5-i) C(3,i) = 45 + 60 + 15
        let p = CodeParams::new(9, 5, 3, Some(2)).unwrap();
        assert_eq!(field_bound_mbrr(&p), 10 * 120);
    }

    #[test]
    fn unsupported_regime() {
        // n - r < k
        assert!(matches!(
            search_mbrr(12, 10, 4, 3, gf(65537), 1, 10, 1000),
            Err(Error::UnsupportedRegime(_))
        ));
    }

    #[test]
    fn search_over_gf11_succeeds() {
        let code = flagship_gf11();
        assert_eq!(code.file_size(), 23);
        assert!(code.exhaustive_verified());
    }

    #[test]
    fn encode_matches_paper_procedure() {
        // independent oracle: run the two-part encoding procedure by hand
        // and compare with the generator route
        let code = search_mbrr(12, 8, 4, 3, gf(65537), 5, 100, 100_000).unwrap();
        let f = code.field();
        let p = *code.params();
        let (d, nr, m) = (p.d(), p.nodes_per_rack(), p.m());
        let b = code.file_size();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let data: Vec<u64> = (0..b).map(|_| f.random(&mut rng)).collect();

        let part1 = (p.k() - m) * d;
        let globals = code.q_mat.left_mul_vec(&data).unwrap();
        let w: Vec<u64> = data[..part1].iter().copied().chain(globals).collect();
        // M2 = [[S1, S2], [S2^T, 0]]
        let mut m2 = FieldMatrix::zeros(f, d, d);
        for row in 0..d {
            for col in 0..d {
                if let Some(idx) = code.m2_symbol(row, col) {
                    m2.set(row, col, data[idx]);
                }
            }
        }
        let stored = code.encode(&data).unwrap();
        for rack in 0..p.r() {
            let m1row = &w[rack * (nr - 1) * d..(rack + 1) * (nr - 1) * d];
            // non-relayers hold raw W slices
            for slot in 1..nr {
                let node = rack * nr + slot;
                assert_eq!(stored[node], m1row[(slot - 1) * d..slot * d].to_vec());
            }
            // relayer: M2 phi + M1row P_rack
            let phi_col = code.phi.col(rack);
            let m2phi = m2.mul_vec(&phi_col).unwrap();
            let mut expect = m2phi;
            for sym in 0..d {
                for (pos, &wv) in m1row.iter().enumerate() {
                    let coeff = code.p_mat.get(pos, rack * d + sym);
                    expect[sym] = f.add(expect[sym], f.mul(coeff, wv));
                }
            }
            assert_eq!(stored[rack * nr], expect);
        }
    }

    #[test]
    fn zero_and_unit_data_linearity() {
        let code = search_mbrr(12, 8, 4, 3, gf(65537), 5, 100, 100_000).unwrap();
        let b = code.file_size();
        let zero = code.encode(&vec![0; b]).unwrap();
        assert!(zero.iter().all(|c| c.iter().all(|&v| v == 0)));
        let mut e1 = vec![0u64; b];
        e1[0] = 1;
        let enc = code.encode(&e1).unwrap();
        let flat: Vec<u64> = enc.into_iter().flatten().collect();
        assert_eq!(flat, code.generator().row(0).to_vec());
    }

    #[test]
    fn repair_every_slot_and_random_helpers() {
        // d < r - 1 so helper sets actually vary
        let code = search_mbrr(12, 5, 4, 2, gf(65537), 3, 100, 100_000).unwrap();
        let f = code.field();
        let b = code.file_size();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let data: Vec<u64> = (0..b).map(|_| f.random(&mut rng)).collect();
        let stored = code.encode(&data).unwrap();
        for failed in 0..12 {
            let host = code.layout().rack_of(failed);
            let others: Vec<usize> = (0..4).filter(|&h| h != host).collect();
            for skip in 0..others.len() {
                let helpers: Vec<usize> = others
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &h)| h)
                    .collect();
                let mut contents: Vec<Option<Vec<u64>>> =
                    stored.iter().cloned().map(Some).collect();
                contents[failed] = None;
                let trace = code.repair(&contents, failed, &helpers).unwrap();
                assert_eq!(trace.recovered, stored[failed]);
                assert_eq!(trace.cross_rack_symbols, 2);
                assert_eq!(trace.intra_rack_symbols, 4);
            }
        }
    }

    #[test]
    fn repair_rejects_bad_helpers() {
        let code = flagship_gf11();
        let stored: Vec<Option<Vec<u64>>> = vec![Some(vec![0, 0, 0]); 12];
        assert!(matches!(
            code.repair(&stored, 0, &[0, 1, 2]),
            Err(Error::InvalidHelpers(_))
        ));
        assert!(matches!(
            code.repair(&stored, 0, &[1, 2]),
            Err(Error::InvalidHelpers(_))
        ));
    }

    #[test]
    fn decode_mixed_subset_and_round_trip_after_repair() {
        let code = flagship_gf11();
        let f = code.field();
        let b = code.file_size();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let data: Vec<u64> = (0..b).map(|_| f.random(&mut rng)).collect();
        let stored = code.encode(&data).unwrap();
        // decode from the 8 non-relayer nodes (pure global path)
        let non_relayers: Vec<(usize, Vec<u64>)> = (0..12)
            .filter(|&i| code.layout().slot_of(i) != 0)
            .map(|i| (i, stored[i].clone()))
            .collect();
        assert_eq!(code.decode(&non_relayers).unwrap(), data);
        // decode from a subset with relayers
        let mixed: Vec<(usize, Vec<u64>)> = [0, 3, 6, 9, 1, 4, 7, 10]
            .iter()
            .map(|&i| (i, stored[i].clone()))
            .collect();
        assert_eq!(code.decode(&mixed).unwrap(), data);
        // repair a relayer, then decode a subset including the repaired node
        let mut contents: Vec<Option<Vec<u64>>> = stored.iter().cloned().map(Some).collect();
        contents[3] = None;
        let trace = code.repair(&contents, 3, &[0, 2, 3]).unwrap();
        assert_eq!(trace.recovered, stored[3]);
        assert_eq!(trace.cross_rack_symbols, 3);
    }

    #[test]
    fn product_matrix_symmetry_through_encode() {
        // phi_i M2 phi_j^T computed from rack i equals the same from rack j
        let code = search_mbrr(12, 8, 4, 3, gf(65537), 5, 100, 100_000).unwrap();
        let f = code.field();
        let b = code.file_size();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let data: Vec<u64> = (0..b).map(|_| f.random(&mut rng)).collect();
        let stored = code.encode(&data).unwrap();
        let contents: Vec<Option<Vec<u64>>> = stored.iter().cloned().map(Some).collect();
        for i in 0..4 {
            for j in 0..4 {
                let m2phi_i = code.rack_m2_phi(&contents, i).unwrap();
                let m2phi_j = code.rack_m2_phi(&contents, j).unwrap();
                let a = dotp(f, &code.phi.col(j), &m2phi_i);
                let b2 = dotp(f, &code.phi.col(i), &m2phi_j);
                assert_eq!(a, b2);
            }
        }
    }

    fn dotp(f: Field, a: &[u64], b: &[u64]) -> u64 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }
}
