//! Restricted modules over the affinization and exact module actions.
//!
//! Three kinds of cyclic modules cover everything the crate needs: the
//! induced module with a one-dimensional top killed by all nonnegative
//! degrees (the vacuum picture at any level), the level-zero quotient by
//! positive degrees only, and highest-weight modules where degree-zero
//! Cartan parts act by scalars. Tensor products of these give the
//! separating modules behind the nonzero certificate.

use crate::liealg::Algebra;
use crate::partitions::{ColoredPartition, Part};
use crate::pbw::UElement;
use crate::rat::{rat, Rat};
use num::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub enum ModuleKind {
    /// Top vector killed by all parts of degree >= 0; central charge `level`.
    Induced { level: Rat },
    /// Quotient by positive degrees and the center: parts of degree <= 0
    /// stay free, level is zero.
    FreeZero,
    /// Highest-weight module: degree-zero Cartan parts act by `hw`,
    /// degree-zero raising parts and positive degrees kill the top vector.
    HighestWeight { level: Rat, hw: Vec<Rat> },
}

impl ModuleKind {
    pub fn level(&self) -> Rat {
        match self {
            ModuleKind::Induced { level } => level.clone(),
            ModuleKind::FreeZero => Rat::zero(),
            ModuleKind::HighestWeight { level, .. } => level.clone(),
        }
    }

    /// Whether a part labels the free half: u(pi)v with admissible parts
    /// runs over a basis of the module.
    pub fn admits(&self, alg: &Algebra, p: Part) -> bool {
        match self {
            ModuleKind::Induced { .. } => p.degree < 0,
            ModuleKind::FreeZero => p.degree <= 0,
            ModuleKind::HighestWeight { .. } => {
                p.degree < 0 || (p.degree == 0 && alg.heights[p.color as usize] < 0)
            }
        }
    }

    /// Scalar action of an inadmissible part sitting directly on the top
    /// vector; zero means it kills the vector.
    fn base_scalar(&self, alg: &Algebra, p: Part) -> Rat {
        match self {
            ModuleKind::Induced { .. } | ModuleKind::FreeZero => Rat::zero(),
            ModuleKind::HighestWeight { hw, .. } => {
                if p.degree == 0 && alg.is_cartan(p.color as usize) {
                    let i = alg
                        .cartan
                        .iter()
                        .position(|&c| c == p.color as usize)
                        .expect("cartan index");
                    hw[i].clone()
                } else {
                    Rat::zero()
                }
            }
        }
    }
}

/// Vector in a cyclic module: coefficients of the basis u(pi)v over
/// admissible sorted partitions pi.
pub type ModVector = BTreeMap<ColoredPartition, Rat>;

pub fn mv_add_term(acc: &mut ModVector, pi: ColoredPartition, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(pi.clone()).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&pi);
    }
}

pub fn mv_top() -> ModVector {
    let mut m = ModVector::new();
    m.insert(ColoredPartition::empty(), num::One::one());
    m
}

/// Reduce a raw word applied to the top vector onto the module basis.
///
/// Worklist rewriting: the rightmost inadmissible part is pushed toward the
/// top vector by commutator swaps and evaluated there; once every part is
/// admissible the word is sorted by the same swaps. Both phases strictly
/// decrease (length, inadmissible count, distance of inadmissibles to the
/// right end, inversion count) lexicographically.
pub fn reduce_word(alg: &Algebra, kind: &ModuleKind, word: &[Part], coeff: Rat) -> ModVector {
    let mut out = ModVector::new();
    if coeff.is_zero() {
        return out;
    }
    let level = kind.level();
    let mut work: Vec<(Vec<Part>, Rat)> = vec![(word.to_vec(), coeff)];
    while let Some((w, c)) = work.pop() {
        let bad = (0..w.len()).rev().find(|&i| !kind.admits(alg, w[i]));
        let swap_at = match bad {
            Some(i) if i + 1 == w.len() => {
                let s = kind.base_scalar(alg, w[i]);
                if !s.is_zero() {
                    work.push((w[..i].to_vec(), c * s));
                }
                continue;
            }
            Some(i) => i,
            None => match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
                Some(i) => i,
                None => {
                    mv_add_term(&mut out, ColoredPartition::from_parts(w), c);
                    continue;
                }
            },
        };
        let (a, b) = (w[swap_at], w[swap_at + 1]);
        let mut swapped = w.clone();
        swapped.swap(swap_at, swap_at + 1);
        work.push((swapped, c.clone()));
        for (&t, coef) in alg.bracket_basis(a.color as usize, b.color as usize) {
            let mut shorter: Vec<Part> = w[..swap_at].to_vec();
            shorter.push(Part::new(t as u32, a.degree + b.degree));
            shorter.extend_from_slice(&w[swap_at + 2..]);
            work.push((shorter, &c * coef));
        }
        if a.degree + b.degree == 0 && a.degree != 0 {
            let f = alg.form(a.color as usize, b.color as usize);
            if !f.is_zero() {
                let scalar = &c * f * rat(a.degree) * &level;
                if !scalar.is_zero() {
                    let mut shorter: Vec<Part> = w[..swap_at].to_vec();
                    shorter.extend_from_slice(&w[swap_at + 2..]);
                    work.push((shorter, scalar));
                }
            }
        }
    }
    out
}

/// Apply a single part to a module vector.
pub fn apply_part(alg: &Algebra, kind: &ModuleKind, p: Part, v: &ModVector) -> ModVector {
    let mut out = ModVector::new();
    for (pi, c) in v {
        let mut word = vec![p];
        word.extend_from_slice(pi.parts());
        for (rho, a) in reduce_word(alg, kind, &word, c.clone()) {
            mv_add_term(&mut out, rho, a);
        }
    }
    out
}

/// Apply a word, rightmost part first.
pub fn apply_word(alg: &Algebra, kind: &ModuleKind, word: &[Part], v: &ModVector) -> ModVector {
    let mut cur = v.clone();
    for p in word.iter().rev() {
        cur = apply_part(alg, kind, *p, &cur);
        if cur.is_empty() {
            break;
        }
    }
    cur
}

/// Apply an element given on the sorted-monomial basis.
pub fn apply_element(alg: &Algebra, kind: &ModuleKind, u: &UElement, v: &ModVector) -> ModVector {
    let mut out = ModVector::new();
    for (pi, c) in u {
        let scaled: ModVector = v.iter().map(|(r, a)| (r.clone(), a * c)).collect();
        let image = apply_word(alg, kind, pi.parts(), &scaled);
        for (rho, a) in image {
            mv_add_term(&mut out, rho, a);
        }
    }
    out
}

/// Tensor product of cyclic modules; a basis key is one partition per factor.
#[derive(Debug, Clone)]
pub struct TensorModule {
    pub factors: Vec<ModuleKind>,
}

pub type TensorVector = BTreeMap<Vec<ColoredPartition>, Rat>;

pub fn tv_add_term(acc: &mut TensorVector, key: Vec<ColoredPartition>, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(key.clone()).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

impl TensorModule {
    pub fn level(&self) -> Rat {
        self.factors
            .iter()
            .map(|f| f.level())
            .fold(Rat::zero(), |s, v| s + v)
    }

    /// Leibniz action of a single part.
    pub fn apply_part(&self, alg: &Algebra, p: Part, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::new();
        for (key, c) in v {
            for slot in 0..self.factors.len() {
                let single: ModVector =
                    [(key[slot].clone(), c.clone())].into_iter().collect();
                let image = apply_part(alg, &self.factors[slot], p, &single);
                for (rho, a) in image {
                    let mut nk = key.clone();
                    nk[slot] = rho;
                    tv_add_term(&mut out, nk, a);
                }
            }
        }
        out
    }

    pub fn apply_word(&self, alg: &Algebra, word: &[Part], v: &TensorVector) -> TensorVector {
        let mut cur = v.clone();
        for p in word.iter().rev() {
            cur = self.apply_part(alg, *p, &cur);
            if cur.is_empty() {
                break;
            }
        }
        cur
    }
}

/// The separating certificate: for a chosen partition pi, a tensor module of
/// total level `level`, a start vector and a target basis key such that the
/// coefficient of the target in u(pi') (start) is nonzero exactly for
/// pi' = pi among partitions of length <= len(pi).
pub struct Separator {
    pub module: TensorModule,
    pub start: TensorVector,
    pub target: Vec<ColoredPartition>,
}

pub fn build_separator(alg: &Algebra, level: &Rat, pi: &ColoredPartition) -> Separator {
    let neg: Vec<Part> = pi.parts().iter().copied().filter(|p| p.degree < 0).collect();
    let zero: Vec<Part> = pi.parts().iter().copied().filter(|p| p.degree == 0).collect();
    let pos: Vec<Part> = pi.parts().iter().copied().filter(|p| p.degree > 0).collect();
    let (p_cnt, r_cnt) = (neg.len(), pos.len());

    let mut factors = vec![ModuleKind::Induced {
        level: level - rat(r_cnt as i64),
    }];
    for _ in 0..p_cnt {
        factors.push(ModuleKind::Induced { level: Rat::zero() });
    }
    factors.push(ModuleKind::FreeZero);
    for _ in 0..r_cnt {
        factors.push(ModuleKind::Induced { level: rat(1) });
    }
    let module = TensorModule { factors };

    // Start vector: top everywhere, except each positive part b = x(d)
    // contributes the dual vector x*(-d) applied to the top of its own
    // level-one factor.
    let n_factors = p_cnt + r_cnt + 2;
    let mut start: TensorVector = TensorVector::new();
    start.insert(vec![ColoredPartition::empty(); n_factors], num::One::one());
    for (i, b) in pos.iter().enumerate() {
        let slot = p_cnt + 2 + i;
        let mut next = TensorVector::new();
        for (&col, coef) in alg.dual_of(b.color as usize) {
            for (key, c) in &start {
                let mut nk = key.clone();
                nk[slot] = ColoredPartition::single(Part::new(col as u32, -b.degree));
                tv_add_term(&mut next, nk, c * coef);
            }
        }
        start = next;
    }

    // Target key: each negative part in its own factor, the degree-zero
    // block in the free factor, tops elsewhere.
    let mut target = vec![ColoredPartition::empty(); n_factors];
    for (i, d) in neg.iter().enumerate() {
        target[1 + i] = ColoredPartition::single(*d);
    }
    target[p_cnt + 1] = ColoredPartition::from_parts(zero);

    Separator {
        module,
        start,
        target,
    }
}

/// Pair `u` applied to the separator start vector against the target
/// coordinate. With pi chosen of maximal length in the support of `u`, a
/// nonzero value certifies u != 0 as an operator.
pub fn separating_pairing(alg: &Algebra, level: &Rat, u: &UElement, pi: &ColoredPartition) -> Rat {
    let sep = build_separator(alg, level, pi);
    let mut total = Rat::zero();
    for (rho, c) in u {
        if rho.len() > pi.len() {
            continue;
        }
        let image = sep.module.apply_word(alg, rho.parts(), &sep.start);
        if let Some(v) = image.get(&sep.target) {
            total += v * c;
        }
    }
    total
}

/// Independent nonzero certificate for an element on the monomial basis.
pub fn certify_nonzero(alg: &Algebra, level: &Rat, u: &UElement) -> bool {
    let Some(pi) = u.keys().max_by_key(|pi| pi.len()).cloned() else {
        return false;
    };
    !separating_pairing(alg, level, u, &pi).is_zero()
}
