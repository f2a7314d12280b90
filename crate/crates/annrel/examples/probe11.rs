use annrel::liealg::build_sl;
use annrel::partitions::Window;
use annrel::rat::{rat, Rat};
use annrel::verma::{
    act_embedding, embedded_partitions, relation_leading_terms, slice_window, RbCache, VermaSlice,
};
use annrel::voa::generate_r;
use num::Zero;
use std::time::{Duration, Instant};

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
    let mut t_act = Duration::ZERO;
    let mut vecs = Vec::new();
    let top = slice.top();
    for pi in &pis {
        for rho in &lts {
            if !pi.contains(rho) {
                continue;
            }
            let t0 = Instant::now();
            let v = act_embedding(&a, &slice, &rel, rho, pi, trunc, &mut cache, &top).unwrap();
            t_act += t0.elapsed();
            vecs.push(v);
        }
    }
    eprintln!("act: {} vectors in {t_act:?}", vecs.len());
    let sup: usize = vecs.iter().map(|v| v.len()).sum();
    eprintln!("avg support {}", sup / vecs.len().max(1));
}
