use annrel::liealg::{build_sl, Algebra};
use annrel::partitions::{ColoredPartition, Part, Window};
use annrel::pbw;
use annrel::rat::{binomial, Rat};
use annrel::voa::{self, ft_add, FlatTensor, KernelElement, Relations};
use num::{One, Zero};
use std::collections::BTreeMap;

fn flat_eval(
    alg: &Algebra,
    rel: &Relations,
    a: &voa::StateVector,
    b: &voa::StateVector,
    c: &Rat,
    n: i64,
    window: Window,
    out: &mut FlatTensor,
) {
    let la = a.keys().map(|p| p.len()).max().unwrap_or(0) as i64;
    let lb = b.keys().map(|p| p.len()).max().unwrap_or(0) as i64;
    for p in (la * window.dmin).min(0)..=(la * window.dmax).max(0) {
        let t = n - p;
        if t < (lb * window.dmin).min(0) || t > (lb * window.dmax).max(0) {
            continue;
        }
        let left = voa::mode_in_u(alg, &rel.level, a, p, window).unwrap();
        if left.is_empty() {
            continue;
        }
        let right = voa::mode_in_u(alg, &rel.level, b, t, window).unwrap();
        for (p1, c1) in &left {
            for (p2, c2) in &right {
                ft_add(out, (p1.clone(), p2.clone()), c1 * c2 * c);
            }
        }
    }
}

fn mode_on_tensor(
    alg: &Algebra,
    rel: &Relations,
    q: &KernelElement,
    color: u32,
    i: i64,
    n: i64,
    window: Window,
) -> FlatTensor {
    let mut out = FlatTensor::new();
    for (s, m, kappa, c) in &q.terms {
        let a = rel.d_power(alg, *s, *m);
        let b: voa::StateVector = [(kappa.clone(), Rat::one())].into_iter().collect();
        let xa = voa::act_mode(alg, &rel.level, color, i, &a);
        let xb = voa::act_mode(alg, &rel.level, color, i, &b);
        flat_eval(alg, rel, &xa, &b, c, n, window, &mut out);
        flat_eval(alg, rel, &a, &xb, c, n, window, &mut out);
    }
    out
}

fn truncate_flat(f: &FlatTensor, w: Window) -> FlatTensor {
    f.iter()
        .filter(|((a, b), _)| w.admits(a) && w.admits(b))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect()
}

fn main() {
    let a = build_sl(2).unwrap();
    let rel = voa::generate_r(&a, 1).unwrap();
    let w = Window::new(-6, 6);
    let inner = Window::new(-3, 3);
    let mut cache = BTreeMap::new();
    let grade = 3i64;
    let n = -3i64;
    let color = 1u32;
    let m = -1i64;
    let kers = voa::kernel_q(&a, &rel, 3, grade, None).unwrap();
    eprintln!("{} kernel elements at grade {grade}", kers.len());
    for (qi, q) in kers.iter().enumerate() {
        let _seq = voa::q_of_n(&a, &rel, q, n, w, &mut cache).unwrap();
        let mut lhs = FlatTensor::new();
        for (s, mm, kappa, c) in &q.terms {
            let av = rel.d_power(&a, *s, *mm);
            let b: voa::StateVector = [(kappa.clone(), Rat::one())].into_iter().collect();
            for comm_left in [true, false] {
                let mut part = FlatTensor::new();
                flat_eval(&a, &rel, &av, &b, c, n, w, &mut part);
                for ((p1, p2), cc) in &part {
                    let x = pbw::u_single(
                        ColoredPartition::single(Part::new(color, m)),
                        Rat::one(),
                    );
                    let target = if comm_left { p1 } else { p2 };
                    let u = pbw::u_single(target.clone(), Rat::one());
                    let xu = pbw::multiply(&a, &rel.level, &x, &u);
                    let ux = pbw::multiply(&a, &rel.level, &u, &x);
                    let mut comm = xu;
                    for (pi, cv) in &ux {
                        pbw::u_add_term(&mut comm, pi.clone(), -cv.clone());
                    }
                    for (pi, cv) in &comm {
                        let key = if comm_left {
                            (pi.clone(), p2.clone())
                        } else {
                            (p1.clone(), pi.clone())
                        };
                        ft_add(&mut lhs, key, cv * cc);
                    }
                }
            }
        }
        let mut rhs = FlatTensor::new();
        for i in 0..=(grade + 3) {
            let coef = binomial(m, i as u32);
            if coef.is_zero() {
                continue;
            }
            let part = mode_on_tensor(&a, &rel, q, color, i, m + n - i, w);
            for (key, c) in part {
                ft_add(&mut rhs, key, c * &coef);
            }
        }
        let l = truncate_flat(&lhs, inner);
        let r = truncate_flat(&rhs, inner);
        if l == r {
            eprintln!("q[{qi}]: match");
            continue;
        }
        eprintln!("q[{qi}]: MISMATCH; q.terms:");
        for (s, mm, kappa, c) in &q.terms {
            eprintln!("  term s={s} D^{mm} kappa={kappa} c={c}");
        }
        let mut keys: Vec<_> = l.keys().chain(r.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let lv = l.get(k).cloned().unwrap_or_else(Rat::zero);
            let rv = r.get(k).cloned().unwrap_or_else(Rat::zero);
            if lv != rv {
                eprintln!("  key ({} , {}): lhs {lv} rhs {rv}", k.0, k.1);
            }
        }
    }
}
