use annrel::liealg::build_sl;
use annrel::partitions::Window;
use annrel::rat::{rat, Rat};
use annrel::verma::{
    embedded_partitions, operator_window, relation_leading_terms, spanning_report, RbCache,
    VermaSlice,
};
use annrel::voa::generate_r;
use num::Zero;
use std::time::Instant;

fn main() {
    let a = build_sl(2).unwrap();
    let rel = generate_r(&a, 1).unwrap();
    let slice = VermaSlice::new(rat(1), vec![Rat::zero()], 8);
    let window = Window::new(-8, -1);
    let mut cache = RbCache::new();
    for n in (-8..=-2).rev() {
        let t0 = Instant::now();
        let trunc = operator_window(&slice, n);
        let lts = relation_leading_terms(&a, &rel, window, trunc, &mut cache).unwrap();
        let t1 = Instant::now();
        let all = embedded_partitions(&a, &lts, n, window, None);
        let mut weights: Vec<Vec<i64>> = all.iter().map(|pi| pi.weight(&a)).collect();
        weights.sort();
        weights.dedup();
        let t2 = Instant::now();
        eprintln!(
            "n={n}: lts={} ({:?}), zero-free labels={} weights={:?} ({:?})",
            lts.len(),
            t1 - t0,
            all.len(),
            weights,
            t2 - t1
        );
        for mu in &weights {
            let t3 = Instant::now();
            let labeled = embedded_partitions(&a, &lts, n, window, Some(mu));
            let t4 = Instant::now();
            eprintln!(
                "  mu={mu:?}: labels={} enum {:?}",
                labeled.len(),
                t4 - t3
            );
        }
        let t5 = Instant::now();
        let cells = spanning_report(&a, &slice, &rel, std::iter::once(n), window, &mut cache)
            .unwrap();
        let t6 = Instant::now();
        for c in &cells {
            eprintln!(
                "  cell n={} mu={:?} dim={} labels={} deficit={}",
                c.n, c.mu, c.w_dim, c.label_count, c.deficit
            );
        }
        eprintln!("  spanning_report({n}) total {:?}", t6 - t5);
    }
}
