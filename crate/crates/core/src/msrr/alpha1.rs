//! The alpha = 1 construction: any systematic MDS code repairs a single
//! symbol by downloading the rest of the host rack plus one aggregated
//! symbol from each of d = m arbitrary helper racks. The last helper
//! subtracts its own rack's contribution from the aggregate before sending.

use crate::error::{Error, Result};
use crate::fieldalg::{Field, FieldMatrix, RowSolver};
use crate::params::{CodeParams, RackLayout};
use crate::trace::RepairTrace;
use std::collections::BTreeMap;

/// Systematic MDS code over a rack layout, one symbol per node, d = m.
#[derive(Debug, Clone)]
pub struct Alpha1Code {
    params: CodeParams,
    field: Field,
    generator: FieldMatrix,
    layout: RackLayout,
}

/// Build the code from a Cauchy parity block: generator [I | C] is MDS, and
/// the field only needs n distinct elements.
pub fn build_alpha1(n: usize, k: usize, r: usize, field: Field) -> Result<Alpha1Code> {
    let m = if n > 0 { k * r / n } else { 0 };
    let params = CodeParams::new(n, k, r, Some(m))?;
    if field.modulus() < n as u64 {
        return Err(Error::FieldTooSmall {
            q: field.modulus(),
            need: n as u64,
        });
    }
    let xs: Vec<u64> = (0..k as u64).collect();
    let ys: Vec<u64> = (k as u64..n as u64).collect();
    let parity = FieldMatrix::cauchy(field, &xs, &ys)?;
    let generator = FieldMatrix::identity(field, k).hstack(&parity)?;
    let layout = RackLayout::systematic(&params);
    Ok(Alpha1Code {
        params,
        field,
        generator,
        layout,
    })
}

impl Alpha1Code {
    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    pub fn layout(&self) -> &RackLayout {
        &self.layout
    }

    pub fn file_size(&self) -> usize {
        self.params.k()
    }

    pub fn alpha(&self) -> usize {
        1
    }

    /// Encode B = k data symbols into one symbol per node.
    pub fn encode(&self, data: &[u64]) -> Result<Vec<Vec<u64>>> {
        if data.len() != self.params.k() {
            return Err(Error::BadInput(format!(
                "expected {} data symbols, got {}",
                self.params.k(),
                data.len()
            )));
        }
        let symbols = self.generator.left_mul_vec(data)?;
        Ok(symbols.into_iter().map(|s| vec![s]).collect())
    }

    /// Repair one node from the host rack plus d arbitrary helper racks, one
    /// symbol from each. `contents[i]` is the stored symbol of node i (the
    /// failed entry may be None).
    pub fn repair(
        &self,
        contents: &[Option<u64>],
        failed: usize,
        helpers: &[usize],
    ) -> Result<RepairTrace> {
        let p = &self.params;
        let nr = p.nodes_per_rack();
        let f = self.field;
        if failed >= p.n() || contents.len() != p.n() {
            return Err(Error::BadInput("node index / contents length".into()));
        }
        let host = self.layout.rack_of(failed);
        let uniq: std::collections::BTreeSet<usize> = helpers.iter().copied().collect();
        if helpers.len() != p.d() || uniq.len() != p.d() {
            return Err(Error::InvalidHelpers(format!(
                "need {} distinct helper racks",
                p.d()
            )));
        }
        if uniq.contains(&host) || uniq.iter().any(|&h| h >= p.r()) {
            return Err(Error::InvalidHelpers(format!(
                "helper racks {helpers:?} invalid for host rack {host}"
            )));
        }
        let read = |node: usize| -> Result<u64> {
            contents[node].ok_or_else(|| Error::BadInput(format!("node {node} content missing")))
        };

        let mut per_helper = BTreeMap::new();

        if p.d() == 0 {
            // k < n/r: the host rack alone holds an information set
            let survivors: Vec<usize> = self
                .layout
                .nodes_in_rack(host)
                .filter(|&i| i != failed)
                .take(p.k())
                .collect();
            let mut pairs = Vec::new();
            for i in survivors {
                pairs.push((i, read(i)?));
            }
            let data = self.decode(&pairs)?;
            let value = self
                .generator
                .left_mul_vec(&data)?
                .get(failed)
                .copied()
                .expect("in range");
            return Ok(RepairTrace::new(vec![value], nr - 1, per_helper));
        }

        // information set: host rack + helpers[..d-1] in full, first t slots
        // of the last helper (dn/r + t = k columns)
        let t = p.t();
        let last = helpers[p.d() - 1];
        let mut info: Vec<usize> = Vec::with_capacity(p.k());
        info.extend(self.layout.nodes_in_rack(host));
        for &h in &helpers[..p.d() - 1] {
            info.extend(self.layout.nodes_in_rack(h));
        }
        info.extend(self.layout.nodes_in_rack(last).take(t));
        debug_assert_eq!(info.len(), p.k());

        // express the last helper's final symbol over the information set
        let target = self.layout.node_at(last, nr - 1);
        let coeffs = self
            .generator
            .select_columns(&info)
            .solve(&self.generator.col(target))?;
        let weight = |node: usize| -> u64 {
            info.iter()
                .position(|&i| i == node)
                .map_or(0, |pos| coeffs[pos])
        };

        // aggregates computed inside each helper rack
        let mut host_sum;
        {
            let mut agg_last = read(target)?;
            for s in 0..t {
                let node = self.layout.node_at(last, s);
                agg_last = f.sub(agg_last, f.mul(weight(node), read(node)?));
            }
            per_helper.insert(last, 1);
            host_sum = agg_last;
        }
        for &h in &helpers[..p.d() - 1] {
            let mut agg = 0u64;
            for node in self.layout.nodes_in_rack(h) {
                agg = f.add(agg, f.mul(weight(node), read(node)?));
            }
            per_helper.insert(h, 1);
            host_sum = f.sub(host_sum, agg);
        }

        // peel off the surviving host symbols, then divide by the failed
        // node's coefficient (nonzero for an MDS generator)
        for node in self.layout.nodes_in_rack(host) {
            if node != failed {
                host_sum = f.sub(host_sum, f.mul(weight(node), read(node)?));
            }
        }
        let q = weight(failed);
        if q == 0 {
            return Err(Error::DecodeFailed(
                "repair coefficient vanished; generator is not MDS".into(),
            ));
        }
        let value = f.mul(host_sum, f.inv(q)?);
        Ok(RepairTrace::new(vec![value], nr - 1, per_helper))
    }

    /// Decode the k data symbols from any k (or more) node symbols.
    pub fn decode(&self, nodes: &[(usize, u64)]) -> Result<Vec<u64>> {
        if nodes.len() < self.params.k() {
            return Err(Error::DecodeFailed(format!(
                "need at least k = {} symbols",
                self.params.k()
            )));
        }
        let cols: Vec<usize> = nodes.iter().map(|&(i, _)| i).collect();
        let vals: Vec<u64> = nodes.iter().map(|&(_, v)| v).collect();
        let solver = RowSolver::new(self.generator.select_columns(&cols))
            .map_err(|_| Error::DecodeFailed("selected nodes do not determine the data".into()))?;
        solver.solve(&vals)
    }

    /// Exhaustive MDS check: every k columns of the generator are
    /// independent.
    pub fn verify_fault_tolerance(&self) -> bool {
        let coded_cols: Vec<Vec<usize>> = (self.params.k()..self.params.n()).map(|c| vec![c]).collect();
        let node_cols: Vec<Vec<usize>> = (0..self.params.n()).map(|c| vec![c]).collect();
        super::block_fault_tolerance(&self.generator, 1, self.params.k(), &coded_cols)
            && super::any_k_recovery(&self.generator, &node_cols, self.params.k())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code_10_8_5() -> Alpha1Code {
        build_alpha1(10, 8, 5, Field::new(11).unwrap()).unwrap()
    }

    #[test]
    fn build_fixes_degree_to_m() {
        let c = code_10_8_5();
        assert_eq!(c.params().d(), 4);
        assert_eq!(c.params().m(), 4);
        let c = build_alpha1(9, 6, 3, Field::new(11).unwrap()).unwrap();
        assert_eq!(c.params().d(), 2);
    }

    #[test]
    fn build_rejects_bad_params() {
        assert!(matches!(
            build_alpha1(4, 4, 2, Field::new(11).unwrap()),
            Err(Error::ThresholdOutOfRange { .. })
        ));
        assert!(matches!(
            build_alpha1(12, 8, 4, Field::new(11).unwrap()),
            Err(Error::FieldTooSmall { .. })
        ));
    }

    #[test]
    fn mds_property() {
        assert!(code_10_8_5().verify_fault_tolerance());
        let c = build_alpha1(9, 6, 3, Field::new(11).unwrap()).unwrap();
        assert!(c.verify_fault_tolerance());
    }

    #[test]
    fn repair_matches_lost_symbol() {
        let code = code_10_8_5();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let data: Vec<u64> = (0..8).map(|_| rng.gen_range(0..11)).collect();
        let stored: Vec<u64> = code.encode(&data).unwrap().into_iter().map(|v| v[0]).collect();

        // relayer of rack 1 with helpers {2,3,4,5} (1-based in the figure)
        for failed in [0usize, 9] {
            let host = code.layout().rack_of(failed);
            let helpers: Vec<usize> = (0..5).filter(|&h| h != host).collect();
            let mut contents: Vec<Option<u64>> = stored.iter().map(|&s| Some(s)).collect();
            contents[failed] = None;
            let trace = code.repair(&contents, failed, &helpers).unwrap();
            assert_eq!(trace.recovered, vec![stored[failed]]);
            assert_eq!(trace.cross_rack_symbols, 4);
            assert_eq!(trace.intra_rack_symbols, 1);
        }
    }

    #[test]
    fn repair_rejects_bad_helpers() {
        let code = code_10_8_5();
        let stored: Vec<Option<u64>> = vec![Some(1); 10];
        assert!(matches!(
            code.repair(&stored, 0, &[0, 1, 2, 3]),
            Err(Error::InvalidHelpers(_))
        ));
        assert!(matches!(
            code.repair(&stored, 0, &[1, 2, 3]),
            Err(Error::InvalidHelpers(_))
        ));
    }

    #[test]
    fn decode_round_trip() {
        let code = code_10_8_5();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let data: Vec<u64> = (0..8).map(|_| rng.gen_range(0..11)).collect();
        let stored: Vec<u64> = code.encode(&data).unwrap().into_iter().map(|v| v[0]).collect();
        let picked: Vec<(usize, u64)> = [1, 2, 3, 4, 6, 7, 8, 9]
            .iter()
            .map(|&i| (i, stored[i]))
            .collect();
        assert_eq!(code.decode(&picked).unwrap(), data);
    }

    #[test]
    fn local_repair_when_m_is_zero() {
        // k < n/r: whole information set inside the host rack, d = 0
        let code = build_alpha1(8, 3, 2, Field::new(11).unwrap()).unwrap();
        assert_eq!(code.params().d(), 0);
        let data = vec![3, 7, 2];
        let stored: Vec<u64> = code.encode(&data).unwrap().into_iter().map(|v| v[0]).collect();
        let mut contents: Vec<Option<u64>> = stored.iter().map(|&s| Some(s)).collect();
        contents[2] = None;
        let trace = code.repair(&contents, 2, &[]).unwrap();
        assert_eq!(trace.recovered, vec![stored[2]]);
        assert_eq!(trace.cross_rack_symbols, 0);
    }
}
