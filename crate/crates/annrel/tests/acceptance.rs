//! End-to-end acceptance suite. Each test prints one pass line; a failing
//! assertion fails the corresponding criterion. Run with --nocapture to see
//! the lines as they complete.

use annrel::liealg::{build_sl, Algebra};
use annrel::modules::{apply_element, apply_word, ModuleKind};
use annrel::partitions::{self, ColoredPartition, Part, Window};
use annrel::pbw::{self, UElement};
use annrel::rankcheck::{self, ScanConfig, Verdict};
use annrel::rat::{binomial, rat, Rat};
use annrel::verma::{self, RbCache, Verdict219, VermaSlice};
use annrel::voa::{self, ft_add, FlatTensor, KernelElement, Relations};
use annrel::weyl::weyl_dim;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn pass(name: &str) {
    println!("[acceptance] {name}: pass");
}

fn lincomb_of(_alg: &Algebra, x: usize) -> BTreeMap<usize, Rat> {
    let mut m = BTreeMap::new();
    m.insert(x, Rat::one());
    m
}

#[test]
fn criterion_01_algebra_soundness() {
    for n in [2usize, 3] {
        let a = build_sl(n).unwrap();
        let d = a.dim();
        for x in 0..d {
            for y in 0..d {
                // antisymmetry
                let xy = a.bracket(&lincomb_of(&a, x), &lincomb_of(&a, y));
                let yx = a.bracket(&lincomb_of(&a, y), &lincomb_of(&a, x));
                for (t, c) in &xy {
                    assert_eq!(yx.get(t).cloned().unwrap_or_else(Rat::zero), -c.clone());
                }
                // form symmetry and dual basis
                assert_eq!(a.form(x, y), a.form(y, x));
                let pair: Rat = a
                    .dual_of(y)
                    .iter()
                    .map(|(t, c)| a.form(x, *t) * c)
                    .sum();
                assert_eq!(pair, if x == y { Rat::one() } else { Rat::zero() });
                for z in 0..d {
                    // Jacobi: [[x,y],z] + [[y,z],x] + [[z,x],y] = 0
                    let mut total: BTreeMap<usize, Rat> = BTreeMap::new();
                    for ((l, r), third) in [((x, y), z), ((y, z), x), ((z, x), y)] {
                        let lr = a.bracket(&lincomb_of(&a, l), &lincomb_of(&a, r));
                        let out = a.bracket(&lr, &lincomb_of(&a, third));
                        for (t, c) in out {
                            *total.entry(t).or_insert_with(Rat::zero) += c;
                        }
                    }
                    assert!(total.values().all(|c| c.is_zero()), "jacobi {x},{y},{z}");
                    // invariance: <[x,y],z> = <x,[y,z]>
                    let xy = a.bracket(&lincomb_of(&a, x), &lincomb_of(&a, y));
                    let lhs: Rat = xy.iter().map(|(t, c)| a.form(*t, z) * c).sum();
                    let yz = a.bracket(&lincomb_of(&a, y), &lincomb_of(&a, z));
                    let rhs: Rat = yz.iter().map(|(t, c)| a.form(x, *t) * c).sum();
                    assert_eq!(lhs, rhs, "invariance {x},{y},{z}");
                }
            }
        }
        // normalization: the coroot of the maximal root pairs to 2
        let f_label = format!("E{}1", n);
        let f = a.labels.iter().position(|l| *l == f_label).unwrap();
        let h_theta = a.bracket(&lincomb_of(&a, a.theta), &lincomb_of(&a, f));
        let mut theta_sq = Rat::zero();
        for (i, ci) in &h_theta {
            for (j, cj) in &h_theta {
                theta_sq += a.form(*i, *j) * ci * cj;
            }
        }
        assert_eq!(theta_sq, rat(2), "maximal root normalization");
    }
    pass("criterion 01, algebra soundness (sl2, sl3 exhaustive)");
}

#[test]
fn criterion_02_order_axioms() {
    let a = build_sl(2).unwrap();
    let rep = partitions::check_order_axioms(&a, 4, Window::new(-4, -1), 2).unwrap();
    assert!(rep.ok);
    assert!(rep.population > 1500, "family too small: {}", rep.population);
    assert!(rep.multiplicativity_checks > 100_000);
    pass("criterion 02, order axioms (length <= 4, parts in [-4,-1])");
}

/// Rightmost-inversion straightening, used as the independent strategy.
fn straighten_rightmost(alg: &Algebra, level: &Rat, word: &[Part], coeff: Rat) -> UElement {
    let mut out = pbw::u_zero();
    let mut work: Vec<(Vec<Part>, Rat)> = vec![(word.to_vec(), coeff)];
    while let Some((w, c)) = work.pop() {
        let inv = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] > w[i + 1]);
        match inv {
            None => pbw::u_add_term(&mut out, ColoredPartition::from_parts(w), c),
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                work.push((swapped, c.clone()));
                for (&t, coef) in alg.bracket_basis(a.color as usize, b.color as usize) {
                    let mut shorter: Vec<Part> = w[..i].to_vec();
                    shorter.push(Part::new(t as u32, a.degree + b.degree));
                    shorter.extend_from_slice(&w[i + 2..]);
                    work.push((shorter, &c * coef));
                }
                if a.degree + b.degree == 0 {
                    let f = alg.form(a.color as usize, b.color as usize);
                    if !f.is_zero() {
                        let scalar = &c * f * rat(a.degree) * level;
                        if !scalar.is_zero() {
                            let mut shorter: Vec<Part> = w[..i].to_vec();
                            shorter.extend_from_slice(&w[i + 2..]);
                            work.push((shorter, scalar));
                        }
                    }
                }
            }
        }
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, alg: &Algebra, max_len: usize, dspan: i64) -> Vec<Part> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            Part::new(
                rng.gen_range(0..alg.dim() as u32),
                rng.gen_range(-dspan..=dspan),
            )
        })
        .collect()
}

#[test]
fn criterion_03_rewriting_engine() {
    let a = build_sl(2).unwrap();
    let level = rat(1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let w = random_word(&mut rng, &a, 6, 2);
        let left = pbw::straighten(&a, &level, &w, Rat::one());
        let right = straighten_rightmost(&a, &level, &w, Rat::one());
        assert_eq!(left, right, "strategies disagree on {w:?}");
    }
    for _ in 0..300 {
        let (x, y, z) = (
            pbw::straighten(&a, &level, &random_word(&mut rng, &a, 3, 2), Rat::one()),
            pbw::straighten(&a, &level, &random_word(&mut rng, &a, 3, 2), Rat::one()),
            pbw::straighten(&a, &level, &random_word(&mut rng, &a, 3, 2), Rat::one()),
        );
        let xy_z = pbw::multiply(&a, &level, &pbw::multiply(&a, &level, &x, &y), &z);
        let x_yz = pbw::multiply(&a, &level, &x, &pbw::multiply(&a, &level, &y, &z));
        assert_eq!(xy_z, x_yz);
    }
    // operator oracle on a truncated highest-weight module
    let kind = ModuleKind::HighestWeight {
        level: level.clone(),
        hw: vec![rat(1)],
    };
    let top = annrel::modules::mv_top();
    for _ in 0..300 {
        let w = random_word(&mut rng, &a, 4, 2);
        let direct = apply_word(&a, &kind, &w, &top);
        let via_u = apply_element(&a, &kind, &pbw::straighten(&a, &level, &w, Rat::one()), &top);
        assert_eq!(direct, via_u, "oracle disagrees on {w:?}");
    }
    pass("criterion 03, rewriting engine (10^4 words, two strategies, module oracle)");
}

fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    alg: &Algebra,
    len: usize,
    degree: i64,
    window: Window,
) -> Option<UElement> {
    let pool = partitions::enumerate(alg, len, degree, window, None);
    if pool.is_empty() {
        return None;
    }
    let mut u = pbw::u_zero();
    let picks = rng.gen_range(1..=3.min(pool.len()));
    for _ in 0..picks {
        let pi = pool[rng.gen_range(0..pool.len())].clone();
        pbw::u_add_term(&mut u, pi, rat(rng.gen_range(1..=5)));
    }
    Some(u)
}

#[test]
fn criterion_04_leading_term_calculus() {
    let a = build_sl(2).unwrap();
    let level = rat(1);
    let w = Window::new(-8, -1);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    let mut drops = 0;
    while checked < 1000 {
        let lu = rng.gen_range(1..=2usize);
        let lv = rng.gen_range(1..=2usize);
        let du = rng.gen_range(-3..=-1i64) * lu as i64;
        let dv = rng.gen_range(-3..=-1i64) * lv as i64;
        let small = Window::new(-4, -1);
        let (Some(u), Some(v)) = (
            random_homogeneous(&mut rng, &a, lu, du, small),
            random_homogeneous(&mut rng, &a, lv, dv, small),
        ) else {
            continue;
        };
        let uv = pbw::multiply(&a, &level, &u, &v);
        let expect = pbw::leading_term(&u)
            .unwrap()
            .product(pbw::leading_term(&v).unwrap());
        assert_eq!(pbw::leading_term(&uv), Some(&expect));
        // stability of the leading term under window doubling
        assert_eq!(
            pbw::leading_term(&pbw::truncate(&uv, w)),
            pbw::leading_term(&pbw::truncate(&uv, w.doubled())),
        );
        // commutator drops length
        let vu = pbw::multiply(&a, &level, &v, &u);
        let mut comm = uv.clone();
        for (pi, c) in &vu {
            pbw::u_add_term(&mut comm, pi.clone(), -c.clone());
        }
        if let Some(lt_c) = pbw::leading_term(&comm) {
            assert!(lt_c.len() < expect.len(), "no length drop: {expect} vs {lt_c}");
            drops += 1;
        }
        checked += 1;
    }
    assert!(drops > 100, "too few nonzero commutators: {drops}");
    pass("criterion 04, leading-term multiplicativity and commutator length drop");
}

#[test]
fn criterion_05_singular_vector_and_relations() {
    let a = build_sl(2).unwrap();
    for k in 1..=3u32 {
        let v = voa::singular_vector(&a, k);
        voa::check_singular(&a, &rat(k as i64), &v).unwrap();
        let rel = voa::generate_r(&a, k).unwrap();
        assert_eq!(rel.basis.len(), 2 * k as usize + 3);
        let coords: Vec<u64> = a.weights[a.theta]
            .iter()
            .map(|w| *w as u64 * (k as u64 + 1))
            .collect();
        assert_eq!(
            weyl_dim(2, &coords).unwrap(),
            num::BigInt::from(2 * k + 3),
            "k={k}"
        );
    }
    pass("criterion 05, singular vector and dim R = 2k+3 for k = 1..3");
}

/// Tensor-valued mode evaluation sum_{p+t=n} a(p) (x) b(t), windowed.
fn flat_eval(
    alg: &Algebra,
    rel: &Relations,
    a: &annrel::voa::StateVector,
    b: &annrel::voa::StateVector,
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

/// x(i) on a tensor term by the product rule, as flat tensor coordinates.
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
        let b: annrel::voa::StateVector = [(kappa.clone(), Rat::one())].into_iter().collect();
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

#[test]
fn criterion_06_kernel_identities() {
    let a = build_sl(2).unwrap();
    let rel = voa::generate_r(&a, 1).unwrap();
    let w = Window::new(-6, 6);
    let inner = Window::new(-3, 3);
    let mut cache = BTreeMap::new();
    for grade in 2..=6i64 {
        let kers = voa::kernel_q(&a, &rel, 3, grade, None).unwrap();
        for q in &kers {
            for n in [-grade, -grade + 1, -2] {
                // D-grading: (Dq)(n+1)-components scale q(n+1) by -(n+1+wt q)
                let dq = d_of_kernel(&a, &rel, q);
                let seq_d = voa::q_of_n(&a, &rel, &dq, n, w, &mut cache).unwrap();
                let seq = voa::q_of_n(&a, &rel, q, n, w, &mut cache).unwrap();
                let scalar = rat(-(n + grade));
                let mut scaled: BTreeMap<(i64, ColoredPartition), UElement> = BTreeMap::new();
                for (p, pairs) in &seq.components {
                    for (rho, u) in pairs {
                        scaled.insert((*p, rho.clone()), pbw::u_scale(u, &scalar));
                    }
                }
                let mut got: BTreeMap<(i64, ColoredPartition), UElement> = BTreeMap::new();
                for (p, pairs) in &seq_d.components {
                    for (rho, u) in pairs {
                        got.insert((*p, rho.clone()), u.clone());
                    }
                }
                scaled.retain(|_, u| !u.is_empty());
                got.retain(|_, u| !u.is_empty());
                assert_eq!(got, scaled, "D-grading at grade {grade}, n={n}");

                // loop commutator: [x(m), q(n)] = sum_i C(m,i) (x_i q)(m+n)
                for color in 0..a.dim() as u32 {
                    for m in -1..=1i64 {
                        let mut lhs = FlatTensor::new();
                        for (s, mm, kappa, c) in &q.terms {
                            let av = rel.d_power(&a, *s, *mm);
                            let b: annrel::voa::StateVector =
                                [(kappa.clone(), Rat::one())].into_iter().collect();
                            // [x(m), a(p)] (x) b(t) + a(p) (x) [x(m), b(t)]
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
                        // for m < 0 the binomials never vanish; the sum still
                        // terminates because the i-th product kills every term
                        // once i exceeds the grades of both tensor factors
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
                        assert_eq!(
                            truncate_flat(&lhs, inner),
                            truncate_flat(&rhs, inner),
                            "commutator at grade {grade}, n={n}, color {color}, m={m}"
                        );
                    }
                }

                // contraction identity for kernel vectors
                let flat = voa::flatten_qn(&a, &rel, q, n, w).unwrap();
                let lhs = voa::psi(&a, &rel.level, &flat, w);
                let rhs = voa::psi_commutator_sum(&a, &rel, q, n, w).unwrap();
                assert_eq!(
                    pbw::truncate(&lhs, inner),
                    pbw::truncate(&rhs, inner),
                    "contraction identity at grade {grade}, n={n}"
                );
            }
        }
    }
    pass("criterion 06, kernel identities (D-grading, loop commutator, contraction)");
}

/// D on a kernel tensor: raise the left D-power and differentiate the right
/// monomial factor.
fn d_of_kernel(alg: &Algebra, rel: &Relations, q: &KernelElement) -> KernelElement {
    let mut terms: BTreeMap<(usize, u32, ColoredPartition), Rat> = BTreeMap::new();
    let mut add = |s: usize, m: u32, kappa: ColoredPartition, c: Rat| {
        let e = terms.entry((s, m, kappa)).or_insert_with(Rat::zero);
        *e += c;
    };
    for (s, m, kappa, c) in &q.terms {
        add(*s, *m + 1, kappa.clone(), c.clone());
        let b: annrel::voa::StateVector = [(kappa.clone(), Rat::one())].into_iter().collect();
        for (kappa2, c2) in voa::op_d(alg, &rel.level, &b) {
            add(*s, *m, kappa2, c2 * c);
        }
    }
    KernelElement {
        grade: q.grade + 1,
        weight: q.weight.clone(),
        terms: terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((s, m, kappa), c)| (s, m, kappa, c))
            .collect(),
    }
}

#[test]
fn criterion_07_cell_inequality() {
    let a = build_sl(2).unwrap();
    let rel = voa::generate_r(&a, 1).unwrap();
    let cfg = ScanConfig {
        ell: 3,
        grades: (-8..=-2).rev().collect(),
        weight_refined: false,
        window: Window::new(-8, -1),
        certify: true,
    };
    let cells = rankcheck::scan(&a, &rel, &cfg).unwrap();
    assert_eq!(cells.len(), 7);
    for c in &cells {
        assert!(c.hypothesis_ok, "hypothesis failed at n={}", c.n);
        assert!(
            c.lhs >= c.middle && c.middle >= c.rhs,
            "inequality chain fails at n={}: {} / {} / {}",
            c.n,
            c.lhs,
            c.middle,
            c.rhs
        );
    }
    pass("criterion 07, counting inequality holds in every scanned cell");
}

#[test]
fn criterion_08_equality_and_relations_among_relations() {
    let a = build_sl(2).unwrap();
    let rel = voa::generate_r(&a, 1).unwrap();
    let window = Window::new(-8, -1);
    let cfg = ScanConfig {
        ell: 3,
        grades: (-8..=-2).rev().collect(),
        weight_refined: false,
        window,
        certify: true,
    };
    let cells = rankcheck::scan(&a, &rel, &cfg).unwrap();
    for c in &cells {
        assert_eq!(c.verdict, Verdict::Equality, "cell n={} not equal", c.n);
    }
    // equality cells must support the combinatorial relations: any two
    // embeddings into the same partition give operators congruent modulo
    // higher terms
    let slice = VermaSlice::new(rat(1), vec![Rat::zero()], 8);
    let mut cache = RbCache::new();
    let mut pairs_checked = 0;
    for c in &cells {
        let trunc = verma::operator_window(&slice, c.n);
        let lts = verma::relation_leading_terms(&a, &rel, window, trunc, &mut cache).unwrap();
        for len in 1..=(-c.n) as usize {
            for pi in partitions::enumerate(&a, len, c.n, window, None) {
                let embs = partitions::embeddings(&pi, &lts);
                for i in 0..embs.len() {
                    for j in i + 1..embs.len() {
                        let verdict = verma::verify_2_19(
                            &a, &slice, &rel, &pi, embs[i], embs[j], window, &mut cache,
                        )
                        .unwrap();
                        assert_eq!(
                            verdict,
                            Verdict219::Expressed,
                            "pi={pi} rho1={} rho2={}",
                            embs[i],
                            embs[j]
                        );
                        pairs_checked += 1;
                    }
                }
            }
        }
    }
    assert!(pairs_checked > 20, "too few embedding pairs: {pairs_checked}");
    pass("criterion 08, equality in all cells and embedding pairs expressed");
}

#[test]
fn criterion_09_weight_refined_failure() {
    let a = build_sl(3).unwrap();
    let rel = voa::generate_r(&a, 1).unwrap();
    let cfg = ScanConfig {
        ell: 3,
        grades: vec![-2, -3, -4],
        weight_refined: true,
        window: Window::new(-4, -1),
        certify: false,
    };
    let cells = rankcheck::scan(&a, &rel, &cfg).unwrap();
    let failing: Vec<(i64, Vec<i64>)> = cells
        .iter()
        .filter(|c| c.hypothesis_ok && c.verdict == Verdict::StrictInequality)
        .map(|c| (c.n, c.mu.clone().unwrap()))
        .collect();
    assert!(
        !failing.is_empty(),
        "expected at least one strictly unequal weight cell"
    );
    // the count is reported as observed, not asserted
    println!("[acceptance]   observed failing (grade, weight) cells: {failing:?}");
    pass("criterion 09, weight-refined scan exhibits strict inequality");
}

/// Number of integer partitions of n (0 for negative n).
fn partition_count(n: i64) -> usize {
    if n < 0 {
        return 0;
    }
    let n = n as usize;
    let mut t = vec![0usize; n + 1];
    t[0] = 1;
    for k in 1..=n {
        for s in k..=n {
            t[s] += t[s - k];
        }
    }
    t[n]
}

#[test]
fn criterion_10_spanning_evidence() {
    let a = build_sl(2).unwrap();
    let rel = voa::generate_r(&a, 1).unwrap();
    let slice = VermaSlice::new(rat(1), vec![Rat::zero()], 8);
    let mut cache = RbCache::new();
    let window = Window::new(-8, -1);
    let cells =
        verma::spanning_report(&a, &slice, &rel, (-8..=-2).rev(), window, &mut cache).unwrap();
    assert!(!cells.is_empty());
    let mut undercounts = Vec::new();
    for c in &cells {
        // the one-per-partition labels must never overcount the dimension
        assert!(
            c.deficit <= 0,
            "labels exceed dimension at n={} mu={:?}: {} labels, dim {}",
            c.n, c.mu, c.label_count, c.w_dim
        );
        // away from the cells dominated by degree-zero lowering modes the
        // label count is exact; the undercounts below are the expected
        // discrepancy where monomials meet the cyclic vector head-on
        if c.deficit < 0 {
            assert!(
                c.mu[0] <= 2,
                "unexpected deficit at n={} mu={:?}: {} labels, dim {}",
                c.n, c.mu, c.label_count, c.w_dim
            );
            undercounts.push((c.n, c.mu[0], c.deficit));
        }
        // the decisive dimension check: the quotient of the graded cell by
        // the relation submodule matches the level-one irreducible
        // character, whose sl2 weight multiplicities are p(-n - (mu/2)^2)
        let cap = ((-2 * c.n + c.mu[0].abs()) / 2) as usize;
        let m_dim = slice.basis_at(&a, c.n, Some(&c.mu), cap).len();
        let m = c.mu[0] / 2;
        assert_eq!(
            m_dim - c.w_dim,
            partition_count(-c.n - m * m),
            "quotient dimension off at n={} mu={:?}: cell {} minus submodule {}",
            c.n, c.mu, m_dim, c.w_dim
        );
    }
    assert!(cells.iter().filter(|c| c.deficit == 0).count() > 30);
    println!("[acceptance]   label undercounts at zero-mode cells (n, mu, deficit): {undercounts:?}");
    pass("criterion 10, relation submodule dimensions match the irreducible quotient at every cell");
}
