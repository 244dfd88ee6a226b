use rrc_core::fieldalg::{Field, FieldMatrix};
use rrc_core::params::CodeParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let f = Field::new(11).unwrap();
    let p = CodeParams::new(12, 8, 4, Some(3)).unwrap();
    let (n, k, r, d) = (12usize, 8usize, 4usize, 3usize);
    let nr = n / r;
    let m = p.m();
    let b = k * d - m * (m - 1) / 2;
    let q_cols = (n - r - k + m) * d;
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // enumerate 8-subsets of 12 nodes once
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        subsets.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 { break; }
            i -= 1;
            if idx[i] != i + n - k { break; }
        }
        if idx[i] == i + n - k && i == 0 { break; }
        idx[i] += 1;
        for j in i + 1..k { idx[j] = idx[j - 1] + 1; }
    }
    println!("subsets: {}", subsets.len());

    let phi = FieldMatrix::vandermonde(f, &[1, 2, 3, 4], d).unwrap();
    let mut best = usize::MAX;
    let mut fail_count = vec![0usize; subsets.len()];
    let attempts = 3000;
    for _ in 0..attempts {
        // P per-block nonsingular
        let mut p_mat = FieldMatrix::zeros(f, (nr - 1) * d, r * d);
        for rack in 0..r {
            for slot in 1..nr {
                loop {
                    let blk = FieldMatrix::random_nonzero(f, d, d, &mut rng);
                    if blk.is_nonsingular() {
                        for a in 0..d { for c in 0..d { p_mat.set((slot-1)*d+a, rack*d+c, blk.get(a, c)); } }
                        break;
                    }
                }
            }
        }
        let q_mat = FieldMatrix::random(f, b, q_cols, &mut rng);
        if q_mat.rank() != q_cols { continue; }
        // build generator inline
        let gen = build_gen(f, n, k, r, d, m, b, &q_mat, &phi, &p_mat);
        let mut fails = 0;
        for (si, s) in subsets.iter().enumerate() {
            let cols: Vec<usize> = s.iter().flat_map(|&i| (i*d)..(i+1)*d).collect();
            if gen.select_columns(&cols).rank() != b { fails += 1; fail_count[si] += 1; }
        }
        if fails < best { best = fails; println!("new best: {fails} failing subsets"); }
        if fails == 0 { println!("SUCCESS"); return; }
    }
    println!("best over {attempts} attempts: {best}");
    let mx = fail_count.iter().copied().max().unwrap();
    println!("worst subsets (fail rate = {mx}/{attempts}):");
    for (si, &c) in fail_count.iter().enumerate() {
        if c == mx { println!("  {:?}", subsets[si]); }
    }
    // and how many subsets failed in >90% of attempts
    let persistent = fail_count.iter().filter(|&&c| c * 10 > attempts * 9).count();
    println!("subsets failing >90% of attempts: {persistent}");
}

fn build_gen(f: Field, n: usize, k: usize, r: usize, d: usize, m: usize, b: usize,
             q_mat: &FieldMatrix, phi: &FieldMatrix, p_mat: &FieldMatrix) -> FieldMatrix {
    let nr = n / r;
    let part1 = (k - m) * d;
    let m2sym = |row: usize, col: usize| -> Option<usize> {
        let (lo, hi) = (row.min(col), row.max(col));
        if hi < m { Some(part1 + lo * (2 * m - lo + 1) / 2 + (hi - lo)) }
        else if lo < m { Some(part1 + m * (m + 1) / 2 + lo * (d - m) + (hi - m)) }
        else { None }
    };
    let w_col = |col: usize| -> Vec<u64> {
        let mut out = vec![0u64; b];
        if col < part1 { out[col] = 1; } else { for rr in 0..b { out[rr] = q_mat.get(rr, col - part1); } }
        out
    };
    let mut gen = FieldMatrix::zeros(f, b, n * d);
    for rack in 0..r {
        let w_base = rack * (nr - 1) * d;
        for slot in 0..nr {
            let node = rack * nr + slot;
            for sym in 0..d {
                let col = node * d + sym;
                if slot >= 1 {
                    let w = w_col(w_base + (slot - 1) * d + sym);
                    for rr in 0..b { gen.set(rr, col, w[rr]); }
                } else {
                    for c in 0..d {
                        if let Some(i2) = m2sym(sym, c) {
                            let v = f.add(gen.get(i2, col), phi.get(c, rack));
                            gen.set(i2, col, v);
                        }
                    }
                    for pos in 0..(nr - 1) * d {
                        let coeff = p_mat.get(pos, rack * d + sym);
                        if coeff == 0 { continue; }
                        let w = w_col(w_base + pos);
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
