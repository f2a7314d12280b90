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

struct Ech {
    index: BTreeMap<ColoredPartition, usize>,
    rows: Vec<Option<Vec<BigInt>>>,
    every: u32,
    maxbits: u64,
    steps: u64,
    fails: u64,
}

fn strip(row: &mut [BigInt]) {
    let mut g = BigInt::from(0);
    for c in row.iter() {
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if g > BigInt::from(1) {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

impl Ech {
    fn to_dense(&self, v: &ModVector) -> Vec<BigInt> {
        let mut l = BigInt::from(1);
        for c in v.values() {
            l = l.lcm(c.denom());
        }
        let mut row = vec![BigInt::from(0); self.rows.len()];
        for (k, c) in v {
            row[self.index[k]] = c.numer() * (&l / c.denom());
        }
        row
    }

    fn insert(&mut self, v: &ModVector) -> bool {
        let mut row = self.to_dense(v);
        let mut col = 0;
        let mut since = 0u32;
        let mut dprev: Option<BigInt> = None;
        while col < row.len() {
            if row[col].is_zero() {
                col += 1;
                continue;
            }
            let Some(p) = &self.rows[col] else { break };
            self.steps += 1;
            let a = row[col].clone();
            let b = p[col].clone();
            for j in col..row.len() {
                row[j] *= &b;
                if !p[j].is_zero() {
                    row[j] -= &a * &p[j];
                }
            }
            since += 1;
            if let Some(d) = &dprev {
                // Bareiss: the previous pivot divides every entry exactly
                let mut ok = Vec::with_capacity(row.len() - col);
                let mut all = true;
                for j in col..row.len() {
                    let (q, r) = row[j].div_rem(d);
                    if !r.is_zero() {
                        all = false;
                        break;
                    }
                    ok.push(q);
                }
                if all {
                    for (j, q) in (col..row.len()).zip(ok) {
                        row[j] = q;
                    }
                } else {
                    self.fails += 1;
                }
            }
            dprev = Some(b.clone());
            if since == self.every {
                strip(&mut row[col..]);
                since = 0;
            }
            let mb = row[col..].iter().map(|c| c.bits()).max().unwrap_or(0);
            if mb > self.maxbits {
                self.maxbits = mb;
            }
        }
        let Some(c0) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        strip(&mut row[c0..]);
        self.rows[c0] = Some(row);
        true
    }
}

fn main() {
    let every: u32 = std::env::args().nth(1).unwrap().parse().unwrap();
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
    let t0 = Instant::now();
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
    eprintln!("{} vectors (act {:?})", vecs.len(), t0.elapsed());
    let mut index = BTreeMap::new();
    for v in &vecs {
        for k in v.keys() {
            index.entry(k.clone()).or_insert(0usize);
        }
    }
    let m = index.len();
    for (i, s) in index.values_mut().enumerate() {
        *s = i;
    }
    let mut ech = Ech {
        index,
        rows: vec![None; m],
        every,
        maxbits: 0,
        steps: 0,
        fails: 0,
    };
    let t1 = Instant::now();
    let rank = vecs.iter().filter(|v| ech.insert(v)).count();
    eprintln!(
        "every={every}: rank {rank} in {:?}, steps {}, max mid-chain bits {}, div fails {}",
        t1.elapsed(),
        ech.steps,
        ech.maxbits,
        ech.fails
    );
}
