//! Hybrid minimum-storage construction for non-integer kr/n.
//!
//! Layout: m data racks of raw symbols, a hybrid rack with t data nodes and
//! n/r - t coded nodes, and r - m - 1 coded racks. B = k*alpha with
//! alpha = d - m + 1.
//!
//! Repair works by interference alignment. When a node of data rack f fails,
//! the new node downloads one aggregated symbol from each other data rack j
//! (local combining vector g_{j,f}), and one combined symbol from the hybrid
//! rack and from each of the coded racks m+2..m+alpha (combining vectors
//! c_{i,f}). The coded blocks are drawn at random and then corrected so that
//! every downloaded symbol's dependence on data rack j is exactly a known
//! multiple of the one symbol rack j sends:
//!
//!   block_j(G_{m+i}) c_{i,f} = kappa_{i,j,f} g_{j,f}        (j != f)
//!   bottom(G_{m+i})  c_{i,f} = 0                            (i >= 2)
//!
//! with a separate direction g_{j,f} per repair target f. Keeping the
//! directions distinct is what preserves the recovery property: aligning two
//! independent combining vectors onto the same direction (as happens when
//! the alignment is parameterized through a shared matrix and orthogonal
//! vector pairs) forces a null vector into every coded rack's block and
//! makes some k-subsets undecodable no matter how the entries are drawn.
//! The hybrid rack's data nodes are repaired the same way, with the host
//! rack's own coded nodes supplying one of the alpha combined symbols.
//!
//! The search draws everything, applies the corrections, then verifies the
//! repair condition (every alpha x alpha block of the repair matrices M_1
//! and M_2 non-singular) and the fault-tolerance condition exhaustively
//! before returning a code.

use crate::error::{Error, Result};
use crate::fieldalg::{Field, FieldMatrix, RowSolver};
use crate::params::{CodeParams, RackLayout, RackRole};
use crate::trace::RepairTrace;
use num_integer::binomial;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// True iff the parameters call for this construction: a hybrid rack exists
/// (t != 0), more than one symbol per node (alpha = d - m + 1 >= 2), and the
/// identity block fits beside the coded block (alpha n/r >= m + alpha t).
pub fn admissible_hybrid(n: usize, k: usize, r: usize, d: usize) -> bool {
    let Ok(p) = CodeParams::new(n, k, r, Some(d)) else {
        return false;
    };
    let (m, t) = (p.m(), p.t());
    let alpha = d + 1 - m;
    t != 0 && alpha >= 2 && alpha * p.nodes_per_rack() >= m + alpha * t
}

/// Field size above which the randomized search is guaranteed to succeed:
/// alpha (2n/r + t + sum over i of i C(k,i) C(n-k,i)).
pub fn field_bound_hybrid(p: &CodeParams) -> Result<u128> {
    let (n, k, m, t) = (p.n(), p.k(), p.m(), p.t());
    let alpha = p.d() + 1 - m;
    if t == 0 || alpha < 2 || alpha * p.nodes_per_rack() < m + alpha * t {
        return Err(Error::NotConstructible(format!(
            "(n,k,r,d) = ({},{},{},{}) does not satisfy the hybrid constraints",
            n,
            k,
            p.r(),
            p.d()
        )));
    }
    let mut sum: u128 = 0;
    for i in 1..=(n - k).min(k) {
        sum += i as u128 * binomial(k as u128, i as u128) * binomial((n - k) as u128, i as u128);
    }
    Ok(alpha as u128 * (2 * p.nodes_per_rack() as u128 + t as u128 + sum))
}

/// A verified hybrid minimum-storage code with B = k*alpha.
///
/// `g_vecs[j][f]` is data rack j's combining vector for repair target f
/// (f = m means the hybrid rack's data nodes). `c_vecs[i][f]` is the
/// combining vector of helper rack m+i for target f; index 0 is the hybrid
/// rack, whose vector spans only its coded columns. `kappa[i][j][f]` is the
/// known multiple linking helper i's symbol to rack j's symbol.
#[derive(Debug, Clone)]
pub struct HybridMsrrCode {
    params: CodeParams,
    field: Field,
    pub(crate) g_vecs: Vec<Vec<Vec<u64>>>,
    pub(crate) c_vecs: Vec<Vec<Vec<u64>>>,
    pub(crate) kappa: Vec<Vec<Vec<u64>>>,
    generator: FieldMatrix,
    layout: RackLayout,
}

struct Dims {
    m: usize,
    t: usize,
    alpha: usize,
    w: usize,  // alpha * n/r, symbols per rack
    b: usize,  // k * alpha
    wh: usize, // coded columns of the hybrid rack, w - t*alpha
}

fn dims(p: &CodeParams) -> Dims {
    let m = p.m();
    let t = p.t();
    let alpha = p.d() + 1 - m;
    let w = alpha * p.nodes_per_rack();
    Dims {
        m,
        t,
        alpha,
        w,
        b: p.k() * alpha,
        wh: w - t * alpha,
    }
}

fn dot(f: Field, a: &[u64], b: &[u64]) -> u64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b.iter()) {
        acc = f.add(acc, f.mul(*x, *y));
    }
    acc
}

/// Correct the rows [row0, row0 + h) of `mat` so that the block maps each
/// input vector to its target. The inputs must be linearly independent; the
/// correction is confined to a pivot column set of the input matrix, leaving
/// everything else as drawn.
fn prescribe_images(
    mat: &mut FieldMatrix,
    row0: usize,
    h: usize,
    inputs: &[&[u64]],
    targets: &[Vec<u64>],
) -> bool {
    let f = mat.field();
    let s = inputs.len();
    if s == 0 {
        return true;
    }
    let cols = inputs[0].len();
    // columns of C are the input vectors
    let c_mat = FieldMatrix::from_fn(f, cols, s, |i, j| inputs[j][i]);
    let pivots = crate::fieldalg::independent_columns(&c_mat.transpose(), s);
    if pivots.len() < s {
        return false;
    }
    let c_pivot = c_mat.select_rows(&pivots);
    let Ok(c_pivot_inv) = c_pivot.inverse() else {
        return false;
    };
    // residual (targets - block * inputs), one column per constraint
    let mut resid = FieldMatrix::zeros(f, h, s);
    for (q, (input, target)) in inputs.iter().zip(targets.iter()).enumerate() {
        for rr in 0..h {
            let mut acc = 0u64;
            for cc in 0..cols {
                acc = f.add(acc, f.mul(mat.get(row0 + rr, cc), input[cc]));
            }
            resid.set(rr, q, f.sub(target[rr], acc));
        }
    }
    let delta = resid.mul(&c_pivot_inv).expect("dims");
    for rr in 0..h {
        for (q, &pc) in pivots.iter().enumerate() {
            let v = f.add(mat.get(row0 + rr, pc), delta.get(rr, q));
            mat.set(row0 + rr, pc, v);
        }
    }
    true
}

/// Randomized search with constructive alignment constraints and exhaustive
/// verification. Deterministic for a given seed.
pub fn search_hybrid(
    n: usize,
    k: usize,
    r: usize,
    d: usize,
    field: Field,
    seed: u64,
    max_attempts: usize,
) -> Result<HybridMsrrCode> {
    let p = CodeParams::new(n, k, r, Some(d))?;
    let dm = dims(&p);
    if dm.t == 0 {
        return Err(Error::HomogeneousUseMsr);
    }
    if dm.alpha < 2 {
        return Err(Error::NotConstructible(
            "alpha = d - m + 1 < 2: use the alpha = 1 construction".into(),
        ));
    }
    if dm.w < dm.m + dm.alpha * dm.t {
        return Err(Error::NotConstructible(format!(
            "alpha n/r = {} < m + alpha t = {}",
            dm.w,
            dm.m + dm.alpha * dm.t
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut m1_fail, mut m2_fail, mut ft_fail, mut draw_fail) = (0usize, 0, 0, 0);
    for _ in 0..max_attempts {
        let Some(code) = draw(&p, &dm, field, &mut rng) else {
            draw_fail += 1;
            continue;
        };
        if !code.repair_condition_m1() {
            m1_fail += 1;
            continue;
        }
        if !code.repair_condition_m2() {
            m2_fail += 1;
            continue;
        }
        if !code.fault_tolerance_blocks() {
            ft_fail += 1;
            continue;
        }
        return Ok(code);
    }
    Err(Error::SearchFailed {
        attempts: max_attempts,
        report: format!(
            "repair M1 failed {m1_fail}, repair M2 failed {m2_fail}, \
             fault tolerance failed {ft_fail}, degenerate draws {draw_fail}"
        ),
    })
}

fn draw(p: &CodeParams, dm: &Dims, field: Field, rng: &mut ChaCha8Rng) -> Option<HybridMsrrCode> {
    let f = field;
    let (m, t, alpha, w, b, wh) = (dm.m, dm.t, dm.alpha, dm.w, dm.b, dm.wh);
    let hybrid_target = m; // index of the hybrid-rack repair target

    let rand_vec = |rng: &mut ChaCha8Rng, len: usize| -> Vec<u64> {
        (0..len).map(|_| f.random(rng)).collect()
    };

    // per-(data rack, target) interference directions
    let g_vecs: Vec<Vec<Vec<u64>>> = (0..m)
        .map(|j| {
            (0..=m)
                .map(|fv| if fv == j { Vec::new() } else { rand_vec(rng, w) })
                .collect()
        })
        .collect();
    // per-(helper rack, target) combining vectors
    let c_vecs: Vec<Vec<Vec<u64>>> = (0..alpha)
        .map(|i| {
            let width = if i == 0 { wh } else { w };
            (0..=m).map(|_| rand_vec(rng, width)).collect()
        })
        .collect();
    let kappa: Vec<Vec<Vec<u64>>> = (0..alpha)
        .map(|_| {
            (0..m)
                .map(|_| (0..=m).map(|_| f.random_nonzero(rng)).collect())
                .collect()
        })
        .collect();

    // generator skeleton: raw data racks, hybrid identity block, random
    // coded blocks
    let mut gen = FieldMatrix::zeros(f, b, p.n() * alpha);
    for h in 0..m {
        for c in 0..w {
            gen.set(h * w + c, h * w + c, 1);
        }
    }
    let hybrid_base = m * w;
    for c in 0..t * alpha {
        gen.set(b - t * alpha + c, hybrid_base + c, 1);
    }
    let coded_col0 = |i: usize| {
        if i == 0 {
            hybrid_base + t * alpha
        } else {
            (m + i) * w
        }
    };
    let coded_width = |i: usize| if i == 0 { wh } else { w };
    for i in 0..p.r() - m {
        let (c0, cw) = (coded_col0(i), coded_width(i));
        for rr in 0..b {
            for cc in 0..cw {
                gen.set(rr, c0 + cc, f.random(rng));
            }
        }
    }

    // alignment corrections on the helper racks that participate in repair
    for i in 0..alpha {
        let (c0, cw) = (coded_col0(i), coded_width(i));
        let mut block = gen.submatrix(0..b, c0..c0 + cw);
        for j in 0..m {
            let mut inputs: Vec<&[u64]> = Vec::new();
            let mut targets: Vec<Vec<u64>> = Vec::new();
            for fv in (0..=m).filter(|&fv| fv != j && fv != hybrid_target) {
                inputs.push(&c_vecs[i][fv]);
                targets.push(
                    g_vecs[j][fv]
                        .iter()
                        .map(|&x| f.mul(kappa[i][j][fv], x))
                        .collect(),
                );
            }
            inputs.push(&c_vecs[i][hybrid_target]);
            targets.push(
                g_vecs[j][hybrid_target]
                    .iter()
                    .map(|&x| f.mul(kappa[i][j][hybrid_target], x))
                    .collect(),
            );
            if !prescribe_images(&mut block, j * w, w, &inputs, &targets) {
                return None;
            }
        }
        if i >= 1 {
            // a coded rack's combined symbol must not leak the hybrid
            // rack's data symbols during a data-rack repair
            let inputs: Vec<&[u64]> = (0..m).map(|fv| c_vecs[i][fv].as_slice()).collect();
            let targets: Vec<Vec<u64>> = (0..m).map(|_| vec![0u64; t * alpha]).collect();
            if !prescribe_images(&mut block, b - t * alpha, t * alpha, &inputs, &targets) {
                return None;
            }
        }
        for rr in 0..b {
            for cc in 0..cw {
                gen.set(rr, c0 + cc, block.get(rr, cc));
            }
        }
    }

    Some(HybridMsrrCode {
        params: *p,
        field: f,
        g_vecs,
        c_vecs,
        kappa,
        generator: gen,
        layout: RackLayout::systematic(p),
    })
}

impl HybridMsrrCode {
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
        self.params.d() + 1 - self.params.m()
    }

    pub fn file_size(&self) -> usize {
        self.params.k() * self.alpha()
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    /// Rebuild a code from serialized pieces (no re-verification).
    pub(crate) fn from_parts(
        params: CodeParams,
        field: Field,
        g_vecs: Vec<Vec<Vec<u64>>>,
        c_vecs: Vec<Vec<Vec<u64>>>,
        kappa: Vec<Vec<Vec<u64>>>,
        generator: FieldMatrix,
    ) -> Result<Self> {
        let dm = dims(&params);
        if generator.rows() != dm.b || generator.cols() != params.n() * dm.alpha {
            return Err(Error::BadContainer("generator shape mismatch".into()));
        }
        if g_vecs.len() != dm.m || c_vecs.len() != dm.alpha || kappa.len() != dm.alpha {
            return Err(Error::BadContainer("component shape mismatch".into()));
        }
        Ok(HybridMsrrCode {
            params,
            field,
            g_vecs,
            c_vecs,
            kappa,
            generator,
            layout: RackLayout::systematic(&params),
        })
    }

    fn dims(&self) -> Dims {
        dims(&self.params)
    }

    fn coded_col0(&self, i: usize) -> usize {
        let dm = self.dims();
        if i == 0 {
            dm.m * dm.w + dm.t * dm.alpha
        } else {
            (dm.m + i) * dm.w
        }
    }

    fn coded_width(&self, i: usize) -> usize {
        let dm = self.dims();
        if i == 0 {
            dm.wh
        } else {
            dm.w
        }
    }

    /// Image of helper rack m+i's combining vector for target `fv`,
    /// restricted to the rows of data rack `j`.
    fn block_image(&self, i: usize, j: usize, fv: usize) -> Vec<u64> {
        let dm = self.dims();
        let c0 = self.coded_col0(i);
        let block = self
            .generator
            .submatrix(j * dm.w..(j + 1) * dm.w, c0..c0 + self.coded_width(i));
        block.mul_vec(&self.c_vecs[i][fv]).expect("dims")
    }

    /// Image on the bottom rows (the hybrid rack's data symbols).
    fn bottom_image(&self, i: usize, fv: usize) -> Vec<u64> {
        let dm = self.dims();
        let c0 = self.coded_col0(i);
        let block = self
            .generator
            .submatrix(dm.b - dm.t * dm.alpha..dm.b, c0..c0 + self.coded_width(i));
        block.mul_vec(&self.c_vecs[i][fv]).expect("dims")
    }

    /// Repair matrix for data rack `fv`: row i is the dependence of helper
    /// m+i's combined symbol on rack fv's w symbols, after interference
    /// cancellation. Every alpha-column block must be non-singular.
    pub fn m1(&self, fv: usize) -> FieldMatrix {
        let dm = self.dims();
        let rows: Vec<Vec<u64>> = (0..dm.alpha).map(|i| self.block_image(i, fv, fv)).collect();
        FieldMatrix::from_rows(self.field, rows).expect("rectangular")
    }

    /// Repair matrix for the hybrid rack's data nodes: column i is the
    /// dependence of helper m+i's combined symbol on the t*alpha hybrid data
    /// symbols. Every alpha-row block must be non-singular.
    pub fn m2(&self) -> FieldMatrix {
        let dm = self.dims();
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, dm.t * dm.alpha, dm.alpha);
        for i in 0..dm.alpha {
            let col = self.bottom_image(i, dm.m);
            for rr in 0..dm.t * dm.alpha {
                out.set(rr, i, col[rr]);
            }
        }
        out
    }

    pub(crate) fn repair_condition_m1(&self) -> bool {
        let dm = self.dims();
        for fv in 0..dm.m {
            let m1 = self.m1(fv);
            for l in 0..self.params.nodes_per_rack() {
                if !m1
                    .submatrix(0..dm.alpha, l * dm.alpha..(l + 1) * dm.alpha)
                    .is_nonsingular()
                {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn repair_condition_m2(&self) -> bool {
        let dm = self.dims();
        let m2 = self.m2();
        for i in 0..dm.t {
            if !m2
                .submatrix(i * dm.alpha..(i + 1) * dm.alpha, 0..dm.alpha)
                .is_nonsingular()
            {
                return false;
            }
        }
        true
    }

    /// Generator columns stored by a node.
    pub fn node_cols(&self, node: usize) -> Vec<usize> {
        let alpha = self.alpha();
        (node * alpha..(node + 1) * alpha).collect()
    }

    fn all_node_cols(&self) -> Vec<Vec<usize>> {
        (0..self.params.n()).map(|i| self.node_cols(i)).collect()
    }

    fn coded_node_cols(&self) -> Vec<Vec<usize>> {
        let dm = self.dims();
        let mut out = Vec::new();
        for s in dm.t..self.params.nodes_per_rack() {
            out.push(self.node_cols(self.layout.node_at(dm.m, s)));
        }
        for rack in dm.m + 1..self.params.r() {
            for node in self.layout.nodes_in_rack(rack) {
                out.push(self.node_cols(node));
            }
        }
        out
    }

    pub(crate) fn fault_tolerance_blocks(&self) -> bool {
        super::block_fault_tolerance(
            &self.generator,
            self.alpha(),
            self.params.k(),
            &self.coded_node_cols(),
        )
    }

    /// Full recovery-property verification: the block condition and, as a
    /// cross-check, a rank test over every k-subset of nodes.
    pub fn verify_fault_tolerance(&self) -> bool {
        self.fault_tolerance_blocks()
            && super::any_k_recovery(&self.generator, &self.all_node_cols(), self.params.k())
    }

    /// Zero-residual alignment identities behind the repair: every helper's
    /// combined symbol depends on data rack j only through kappa * g_{j,f},
    /// and a coded rack's data-target symbol carries no hybrid data symbols.
    pub fn alignment_residuals_zero(&self) -> bool {
        let dm = self.dims();
        let f = self.field;
        for i in 0..dm.alpha {
            for j in 0..dm.m {
                for fv in (0..=dm.m).filter(|&fv| fv != j) {
                    let img = self.block_image(i, j, fv);
                    let expect: Vec<u64> = self.g_vecs[j][fv]
                        .iter()
                        .map(|&x| f.mul(self.kappa[i][j][fv], x))
                        .collect();
                    if img != expect {
                        return false;
                    }
                }
            }
            if i >= 1 {
                for fv in 0..dm.m {
                    if self.bottom_image(i, fv).iter().any(|&x| x != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Encode B data symbols into per-node content (alpha symbols each).
    pub fn encode(&self, data: &[u64]) -> Result<Vec<Vec<u64>>> {
        let dm = self.dims();
        if data.len() != dm.b {
            return Err(Error::BadInput(format!(
                "expected {} data symbols, got {}",
                dm.b,
                data.len()
            )));
        }
        let flat = self.generator.left_mul_vec(data)?;
        Ok(flat.chunks(dm.alpha).map(|c| c.to_vec()).collect())
    }

    /// The rack's stored symbols, node by node.
    fn rack_content(&self, contents: &[Option<Vec<u64>>], rack: usize) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(self.dims().w);
        for node in self.layout.nodes_in_rack(rack) {
            let c = contents[node]
                .as_ref()
                .ok_or_else(|| Error::BadInput(format!("node {node} content missing")))?;
            if c.len() != self.alpha() {
                return Err(Error::BadInput(format!("node {node} has wrong symbol count")));
            }
            out.extend_from_slice(c);
        }
        Ok(out)
    }

    fn node_content<'a>(&self, contents: &'a [Option<Vec<u64>>], node: usize) -> Result<&'a [u64]> {
        contents[node]
            .as_ref()
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::BadInput(format!("node {node} content missing")))
    }

    /// Exact repair of a data node with cross-rack bandwidth d. Data-rack
    /// nodes use the fixed helpers {1..m} \ {f} and racks m+1..m+alpha;
    /// hybrid-rack data nodes use {1..m} and racks m+2..m+alpha plus their
    /// own rack's coded nodes. Coded nodes are out of scope.
    pub fn repair(&self, contents: &[Option<Vec<u64>>], failed: usize) -> Result<RepairTrace> {
        let dm = self.dims();
        let f = self.field;
        if failed >= self.params.n() || contents.len() != self.params.n() {
            return Err(Error::BadInput("node index / contents length".into()));
        }
        let rack = self.layout.rack_of(failed);
        let slot = self.layout.slot_of(failed);
        let is_data = match self.layout.role(rack) {
            RackRole::Data => true,
            RackRole::Hybrid => slot < dm.t,
            _ => false,
        };
        if !is_data {
            return Err(Error::UnsupportedRepairTarget(failed));
        }

        let mut per_helper = BTreeMap::new();
        let intra = (self.params.nodes_per_rack() - 1) * dm.alpha;
        let hybrid_rack = dm.m;

        let target = if rack == hybrid_rack { dm.m } else { rack };
        // one aggregated interference symbol per helper data rack
        let mut sigma = vec![0u64; dm.m];
        for j in 0..dm.m {
            if j == rack {
                continue;
            }
            let rc = self.rack_content(contents, j)?;
            sigma[j] = dot(f, &rc, &self.g_vecs[j][target]);
            per_helper.insert(j, 1);
        }
        // combined symbols from the hybrid rack's coded nodes and the coded
        // racks; the hybrid relayer also subtracts its own data nodes'
        // contribution, which is local to that rack
        let mut hybrid_coded = Vec::with_capacity(dm.wh);
        for s in dm.t..self.params.nodes_per_rack() {
            let node = self.layout.node_at(hybrid_rack, s);
            hybrid_coded.extend_from_slice(self.node_content(contents, node)?);
        }
        let mut combined = Vec::with_capacity(dm.alpha);
        {
            let mut z = dot(f, &hybrid_coded, &self.c_vecs[0][target]);
            if rack != hybrid_rack {
                let bottom = self.bottom_image(0, target);
                for (s, b) in bottom.chunks(dm.alpha).enumerate() {
                    let node = self.layout.node_at(hybrid_rack, s);
                    let c = self.node_content(contents, node)?;
                    for a in 0..dm.alpha {
                        z = f.sub(z, f.mul(c[a], b[a]));
                    }
                }
                per_helper.insert(hybrid_rack, 1);
            }
            combined.push(z);
        }
        for i in 1..dm.alpha {
            let rc = self.rack_content(contents, dm.m + i)?;
            combined.push(dot(f, &rc, &self.c_vecs[i][target]));
            per_helper.insert(dm.m + i, 1);
        }
        // interference cancellation
        let mut cleaned = Vec::with_capacity(dm.alpha);
        for (i, &sym) in combined.iter().enumerate() {
            let mut v = sym;
            for j in 0..dm.m {
                if j == rack {
                    continue;
                }
                v = f.sub(v, f.mul(self.kappa[i][j][target], sigma[j]));
            }
            cleaned.push(v);
        }

        if rack != hybrid_rack {
            // subtract the surviving host-rack content, then solve the
            // failed node's alpha x alpha block of M_1
            let m1 = self.m1(rack);
            let host: Vec<usize> = self.layout.nodes_in_rack(rack).collect();
            for (s, &node) in host.iter().enumerate() {
                if node == failed {
                    continue;
                }
                let c = self.node_content(contents, node)?;
                for (row, cl) in cleaned.iter_mut().enumerate() {
                    for a in 0..dm.alpha {
                        *cl = f.sub(*cl, f.mul(m1.get(row, s * dm.alpha + a), c[a]));
                    }
                }
            }
            let block = m1.submatrix(0..dm.alpha, slot * dm.alpha..(slot + 1) * dm.alpha);
            let recovered = block.solve(&cleaned)?;
            return Ok(RepairTrace::new(recovered, intra, per_helper));
        }

        // hybrid data node: subtract the other data nodes' contributions and
        // solve the failed block of M_2 (cleaned = xi * M_2[block])
        let m2 = self.m2();
        let host: Vec<usize> = self.layout.nodes_in_rack(hybrid_rack).collect();
        for s in 0..dm.t {
            if s == slot {
                continue;
            }
            let c = self.node_content(contents, host[s])?;
            for (col, cl) in cleaned.iter_mut().enumerate() {
                for a in 0..dm.alpha {
                    *cl = f.sub(*cl, f.mul(c[a], m2.get(s * dm.alpha + a, col)));
                }
            }
        }
        let block = m2
            .submatrix(slot * dm.alpha..(slot + 1) * dm.alpha, 0..dm.alpha)
            .transpose();
        let recovered = block.solve(&cleaned)?;
        Ok(RepairTrace::new(recovered, intra, per_helper))
    }

    /// Decode the B data symbols from any k (or more) node contents.
    pub fn decode(&self, nodes: &[(usize, Vec<u64>)]) -> Result<Vec<u64>> {
        let dm = self.dims();
        if nodes.len() < self.params.k() {
            return Err(Error::DecodeFailed(format!(
                "need at least k = {} nodes",
                self.params.k()
            )));
        }
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for (node, content) in nodes {
            if content.len() != dm.alpha {
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
