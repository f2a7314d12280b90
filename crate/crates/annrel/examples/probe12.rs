use annrel::liealg::build_sl;
use annrel::modules::ModVector;
use annrel::partitions::{ColoredPartition, Window};
use annrel::rat::{rat, Rat};
use annrel::verma::{
    act_embedding, embedded_partitions, relation_leading_terms, slice_window, RbCache, VermaSlice,
};
use annrel::voa::generate_r;
use num::{Integer, Zero};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

fn normalize_row(v: &mut ModVector) {
    if v.is_empty() {
        return;
    }
    let mut l = num::BigInt::from(1);
    for c in v.values() {
        l = l.lcm(c.denom());
    }
    let mut g = num::BigInt::from(0);
    for c in v.values() {
        g = g.gcd(&(c.numer() * (&l / c.denom())));
    }
    for c in v.values_mut() {
        let n = (c.numer() * (&l / c.denom())) / &g;
        *c = Rat::from_integer(n);
    }
}

struct Ech {
    pivots: BTreeMap<ColoredPartition, ModVector>,
    steps: u64,
    ops: u64,
}

impl Ech {
    fn reduce(&mut self, mut v: ModVector) -> ModVector {
        normalize_row(&mut v);
        loop {
            let Some(key) = v.keys().next().cloned() else {
                return v;
            };
            let Some(row) = self.pivots.get(&key) else {
                return v;
            };
            self.steps += 1;
            let a = v[&key].clone();
            let b = row[&key].clone();
            for c in v.values_mut() {
                *c *= &b;
            }
            self.ops += v.len() as u64 + row.len() as u64;
            for (k2, c2) in row {
                let e = v.entry(k2.clone()).or_insert_with(Rat::zero);
                *e -= &a * c2;
            }
            v.retain(|_, x| !x.is_zero());
            normalize_row(&mut v);
        }
    }

    fn insert(&mut self, v: ModVector) -> bool {
        let v = self.reduce(v);
        let Some(key) = v.keys().next().cloned() else {
            return false;
        };
        self.pivots.insert(key, v);
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
    let n = -6;
    let mu = vec![-12i64];
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
    eprintln!("{} vectors", vecs.len());
    let mut ech = Ech {
        pivots: BTreeMap::new(),
        steps: 0,
        ops: 0,
    };
    let t0 = Instant::now();
    let mut rank = 0;
    let mut t_zero = Duration::ZERO;
    for v in vecs {
        let t1 = Instant::now();
        let grew = ech.insert(v);
        if grew {
            rank += 1;
        } else {
            t_zero += t1.elapsed();
        }
    }
    eprintln!(
        "rank {rank} in {:?} (zero-reductions {:?}), steps {}, ops {}",
        t0.elapsed(),
        t_zero,
        ech.steps,
        ech.ops
    );
    let maxbits = ech
        .pivots
        .values()
        .flat_map(|r| r.values())
        .map(|c| c.numer().bits())
        .max()
        .unwrap_or(0);
    let avg_sup: usize =
        ech.pivots.values().map(|r| r.len()).sum::<usize>() / ech.pivots.len().max(1);
    eprintln!("max pivot numer bits {maxbits}, avg row support {avg_sup}");
}
