use annrel::liealg::build_sl;
use annrel::modules::ModVector;
use annrel::partitions::{ColoredPartition, Window};
use annrel::rat::{rat, Rat};
use annrel::verma::{
    act_embedding, embedded_partitions, relation_leading_terms, slice_window, RbCache, VermaSlice,
};
use annrel::voa::generate_r;
use num::{BigInt, Integer, Zero};
use std::collections::BTreeMap;
use std::time::Instant;

type Row = BTreeMap<u32, BigInt>;

fn strip(row: &mut Row) {
    let mut g = BigInt::from(0);
    for c in row.values() {
        g = g.gcd(c);
        if g == BigInt::from(1) {
            return;
        }
    }
    if g > BigInt::from(1) {
        for c in row.values_mut() {
            *c /= &g;
        }
    }
}

/// row := b*row - a*other, restricted fraction-free combination.
fn combine(row: &mut Row, a: &BigInt, b: &BigInt, other: &Row) {
    for c in row.values_mut() {
        *c *= b;
    }
    for (k, v) in other {
        let e = row.entry(*k).or_insert_with(|| BigInt::from(0));
        *e -= a * v;
    }
    row.retain(|_, c| !c.is_zero());
    strip(row);
}

#[derive(Default)]
struct SparseEch {
    pivots: Vec<(u32, Row)>,
    by_col: BTreeMap<u32, usize>,
}

impl SparseEch {
    fn reduce(&self, row: &mut Row) {
        loop {
            let Some((&c, &pidx)) = row
                .keys()
                .find_map(|k| self.by_col.get_key_value(k))
                .map(|(k, v)| (k, v))
            else {
                return;
            };
            let a = row[&c].clone();
            let b = self.pivots[pidx].1[&c].clone();
            combine(row, &a, &b, &self.pivots[pidx].1);
        }
    }

    fn insert(&mut self, v: &ModVector, index: &BTreeMap<ColoredPartition, u32>) -> bool {
        let mut l = BigInt::from(1);
        for c in v.values() {
            l = l.lcm(c.denom());
        }
        let mut row: Row = v
            .iter()
            .map(|(k, c)| (index[k], c.numer() * (&l / c.denom())))
            .collect();
        strip(&mut row);
        self.reduce(&mut row);
        if row.is_empty() {
            return false;
        }
        // pivot on the column present in the fewest existing pivot rows
        let col = *row
            .keys()
            .min_by_key(|k| self.pivots.iter().filter(|(_, p)| p.contains_key(k)).count())
            .unwrap();
        let b = row[&col].clone();
        let idx = self.pivots.len();
        for (_, p) in self.pivots.iter_mut() {
            if let Some(a) = p.get(&col).cloned() {
                combine(p, &a, &b, &row);
            }
        }
        self.pivots.push((col, row));
        self.by_col.insert(col, idx);
        true
    }
}

fn main() {
    let a = build_sl(2).unwrap();
    let rel = generate_r(&a, 1).unwrap();
    let slice = VermaSlice::new(rat(1), vec![Rat::zero()], 8);
    let window = Window::new(-8, -1);
    let mut cache = RbCache::new();
    let trunc = slice_window(&slice);
    let lts = relation_leading_terms(&a, &rel, window, trunc, &mut cache).unwrap();
    let n = -8;
    let mu = vec![-16i64];
    let pis = embedded_partitions(&a, &lts, n, window, Some(&mu));
    let top = slice.top();
    let mut vecs = Vec::new();
    for pi in &pis {
        for rho in &lts {
            if pi.contains(rho) {
                vecs.push(
                    act_embedding(&a, &slice, &rel, rho, pi, trunc, &mut cache, &top).unwrap(),
                );
            }
        }
    }
    let mut index: BTreeMap<ColoredPartition, u32> = BTreeMap::new();
    for v in &vecs {
        for k in v.keys() {
            index.entry(k.clone()).or_insert(0);
        }
    }
    for (i, s) in index.values_mut().enumerate() {
        *s = i as u32;
    }
    eprintln!("{} vectors, {} columns", vecs.len(), index.len());
    let t1 = Instant::now();
    let mut ech = SparseEch::default();
    let rank = vecs.iter().filter(|v| ech.insert(v, &index)).count();
    let fill: usize = ech.pivots.iter().map(|(_, p)| p.len()).sum();
    let maxbits = ech
        .pivots
        .iter()
        .flat_map(|(_, p)| p.values())
        .map(|c| c.bits())
        .max()
        .unwrap_or(0);
    eprintln!(
        "sparse: rank {rank} in {:?}, avg pivot nnz {}, max bits {maxbits}",
        t1.elapsed(),
        fill / rank.max(1)
    );
}
