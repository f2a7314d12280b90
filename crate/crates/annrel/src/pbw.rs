//! The universal enveloping algebra of the affinization, at a fixed level.
//!
//! Elements are stored on the PBW basis indexed by colored partitions: the
//! monomial for a partition is the product of its parts ascending left to
//! right, so the part closest to degree zero acts first. Products of raw
//! words are straightened by the loop-algebra commutation rule
//! x(i) y(j) = y(j) x(i) + [x,y](i+j) + i d(i+j,0) <x,y> k.

use crate::liealg::Algebra;
use crate::partitions::{ColoredPartition, Part, Window};
use crate::rat::Rat;
use num::Zero;
use std::collections::BTreeMap;

/// Linear combination of PBW monomials.
pub type UElement = BTreeMap<ColoredPartition, Rat>;

pub fn u_zero() -> UElement {
    UElement::new()
}

pub fn u_one() -> UElement {
    let mut m = UElement::new();
    m.insert(ColoredPartition::empty(), num::One::one());
    m
}

pub fn u_single(pi: ColoredPartition, c: Rat) -> UElement {
    let mut m = UElement::new();
    if !c.is_zero() {
        m.insert(pi, c);
    }
    m
}

pub fn u_add_term(acc: &mut UElement, pi: ColoredPartition, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(pi.clone()).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&pi);
    }
}

pub fn u_add(acc: &mut UElement, other: &UElement) {
    for (pi, c) in other {
        u_add_term(acc, pi.clone(), c.clone());
    }
}

pub fn u_scale(u: &UElement, c: &Rat) -> UElement {
    if c.is_zero() {
        return u_zero();
    }
    u.iter().map(|(pi, a)| (pi.clone(), a * c)).collect()
}

/// Straighten a raw word (operator composition order, leftmost acts last)
/// onto the PBW basis at the given level.
pub fn straighten(alg: &Algebra, level: &Rat, word: &[Part], coeff: Rat) -> UElement {
    let mut out = u_zero();
    if coeff.is_zero() {
        return out;
    }
    // Worklist of (word, coefficient); each swap either reduces the
    // inversion count at fixed length or spawns strictly shorter words.
    let mut work: Vec<(Vec<Part>, Rat)> = vec![(word.to_vec(), coeff)];
    while let Some((w, c)) = work.pop() {
        match first_inversion(&w) {
            None => u_add_term(&mut out, ColoredPartition::from_parts(w), c),
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                work.push((swapped, c.clone()));
                // [a, b] term, one part shorter.
                let br = alg.bracket_basis(a.color as usize, b.color as usize);
                for (&t, coef) in br {
                    let mut shorter: Vec<Part> = w[..i].to_vec();
                    shorter.push(Part::new(t as u32, a.degree + b.degree));
                    shorter.extend_from_slice(&w[i + 2..]);
                    work.push((shorter, &c * coef));
                }
                // Central term, two parts shorter.
                if a.degree + b.degree == 0 {
                    let f = alg.form(a.color as usize, b.color as usize);
                    if !f.is_zero() {
                        let scalar = &c * f * crate::rat::rat(a.degree) * level;
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

fn first_inversion(w: &[Part]) -> Option<usize> {
    (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1])
}

/// Product in the enveloping algebra; `a` acts after `b`.
pub fn multiply(alg: &Algebra, level: &Rat, a: &UElement, b: &UElement) -> UElement {
    let mut out = u_zero();
    for (pa, ca) in a {
        for (pb, cb) in b {
            let mut word: Vec<Part> = pa.parts().to_vec();
            word.extend_from_slice(pb.parts());
            u_add(&mut out, &straighten(alg, level, &word, ca * cb));
        }
    }
    out
}

/// Leading term: the order-minimal monomial of the lowest-degree nonzero
/// homogeneous component. For homogeneous elements this is just the
/// order-minimal monomial of the support.
pub fn leading_term(u: &UElement) -> Option<&ColoredPartition> {
    let dmin = u.keys().map(|pi| pi.degree()).min()?;
    u.keys().filter(|pi| pi.degree() == dmin).min()
}

/// Split into homogeneous components by total degree, ascending.
pub fn components(u: &UElement) -> BTreeMap<i64, UElement> {
    let mut out: BTreeMap<i64, UElement> = BTreeMap::new();
    for (pi, c) in u {
        out.entry(pi.degree())
            .or_default()
            .insert(pi.clone(), c.clone());
    }
    out
}

/// Drop monomials with any part outside the window.
pub fn truncate(u: &UElement, window: Window) -> UElement {
    u.iter()
        .filter(|(pi, _)| window.admits(pi))
        .map(|(pi, c)| (pi.clone(), c.clone()))
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum PbwError {
    #[error("depth {depth} does not cover a monomial of length {len}")]
    DepthTooSmall { depth: usize, len: usize },
}

/// Zero test with an independent witness. The term map is a normal form, so
/// emptiness already decides; a nonempty element is additionally certified
/// nonzero by pairing against a separating module, which never misses an
/// element whose support fits within `depth`.
pub fn zero_test(
    alg: &Algebra,
    level: &Rat,
    u: &UElement,
    depth: usize,
) -> Result<bool, PbwError> {
    if u.is_empty() {
        return Ok(true);
    }
    let len = u.keys().map(|pi| pi.len()).max().unwrap();
    if len > depth {
        return Err(PbwError::DepthTooSmall { depth, len });
    }
    Ok(!crate::modules::certify_nonzero(alg, level, u))
}

pub fn format_element(alg: &Algebra, u: &UElement) -> String {
    if u.is_empty() {
        return "0".to_string();
    }
    u.iter()
        .map(|(pi, c)| format!("{} {}", crate::rat::format_rat(c), pi.display(alg)))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_sl;
    use crate::rat::rat;

    fn p(alg: &Algebra, label: &str, d: i64) -> Part {
        let c = alg.labels.iter().position(|l| l == label).unwrap() as u32;
        Part::new(c, d)
    }

    #[test]
    fn sl2_commutators() {
        let a = build_sl(2).unwrap();
        let k = rat(1);
        // e(1) f(-1) = f(-1) e(1) + h(0) + k
        let lhs = straighten(&a, &k, &[p(&a, "E12", 1), p(&a, "E21", -1)], rat(1));
        let mut expect = straighten(&a, &k, &[p(&a, "E21", -1), p(&a, "E12", 1)], rat(1));
        u_add(&mut expect, &u_single(ColoredPartition::single(p(&a, "h1", 0)), rat(1)));
        u_add(&mut expect, &u_single(ColoredPartition::empty(), rat(1)));
        assert_eq!(lhs, expect);

        // h(1) h(-1) = h(-1) h(1) + <h,h> k = h(-1) h(1) + 2k
        let lhs = straighten(&a, &k, &[p(&a, "h1", 1), p(&a, "h1", -1)], rat(1));
        let mut expect = u_single(
            ColoredPartition::from_parts(vec![p(&a, "h1", -1), p(&a, "h1", 1)]),
            rat(1),
        );
        u_add(&mut expect, &u_single(ColoredPartition::empty(), rat(2)));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn already_sorted_is_identity() {
        let a = build_sl(2).unwrap();
        let word = [p(&a, "E21", -2), p(&a, "h1", -1), p(&a, "E12", 1)];
        let u = straighten(&a, &rat(3), &word, rat(5));
        assert_eq!(u.len(), 1);
        assert_eq!(u[&ColoredPartition::from_parts(word.to_vec())], rat(5));
    }

    #[test]
    fn multiply_is_associative() {
        let a = build_sl(2).unwrap();
        let k = rat(2);
        let gens: Vec<UElement> = [
            vec![p(&a, "E12", 1)],
            vec![p(&a, "E21", -1)],
            vec![p(&a, "h1", 0), p(&a, "E12", -1)],
            vec![p(&a, "E21", 2), p(&a, "h1", -2)],
        ]
        .iter()
        .map(|w| straighten(&a, &k, w, rat(1)))
        .collect();
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    let xy_z = multiply(&a, &k, &multiply(&a, &k, x, y), z);
                    let x_yz = multiply(&a, &k, x, &multiply(&a, &k, y, z));
                    assert_eq!(xy_z, x_yz);
                }
            }
        }
    }

    #[test]
    fn straighten_degree_is_preserved() {
        let a = build_sl(3).unwrap();
        let word = [p(&a, "E12", 2), p(&a, "E23", -1), p(&a, "E31", -1)];
        let u = straighten(&a, &rat(1), &word, rat(1));
        for pi in u.keys() {
            assert_eq!(pi.degree(), 0);
        }
        assert!(!u.is_empty());
    }

    #[test]
    fn leading_term_picks_minimal_of_lowest_degree() {
        let a = build_sl(2).unwrap();
        let mut u = u_zero();
        let long = ColoredPartition::from_parts(vec![p(&a, "E12", -1), p(&a, "E12", -1)]);
        let short = ColoredPartition::single(p(&a, "E12", -2));
        let higher = ColoredPartition::single(p(&a, "h1", -1));
        u_add_term(&mut u, long.clone(), rat(1));
        u_add_term(&mut u, short, rat(1));
        u_add_term(&mut u, higher, rat(7));
        assert_eq!(leading_term(&u), Some(&long));
        assert_eq!(leading_term(&u_zero()), None);
    }

    #[test]
    fn zero_test_examples() {
        let a = build_sl(2).unwrap();
        let k = rat(1);
        assert!(zero_test(&a, &k, &u_zero(), 0).unwrap());
        let h0 = u_single(ColoredPartition::single(p(&a, "h1", 0)), rat(1));
        assert!(!zero_test(&a, &k, &h0, 1).unwrap());
        assert!(zero_test(&a, &k, &h0, 0).is_err());
        // uv - vu - [u,v] straightens to nothing for generator pairs.
        for (x, y) in [("E12", "E21"), ("h1", "E12"), ("h1", "E21")] {
            let (px, py) = (p(&a, x, 1), p(&a, y, -1));
            let mut d = straighten(&a, &k, &[px, py], rat(1));
            for (pi, c) in straighten(&a, &k, &[py, px], rat(1)) {
                u_add_term(&mut d, pi, -c);
            }
            for (&t, c) in a.bracket_basis(px.color as usize, py.color as usize) {
                u_add_term(&mut d, ColoredPartition::single(Part::new(t as u32, 0)), -c.clone());
            }
            let central = a.form(px.color as usize, py.color as usize) * &k;
            u_add_term(&mut d, ColoredPartition::empty(), -central);
            assert!(zero_test(&a, &k, &d, 2).unwrap(), "pair ({x},{y})");
        }
    }

    #[test]
    fn truncate_drops_out_of_window() {
        let a = build_sl(2).unwrap();
        let mut u = u_zero();
        u_add_term(&mut u, ColoredPartition::single(p(&a, "E12", -5)), rat(1));
        u_add_term(&mut u, ColoredPartition::single(p(&a, "E12", -2)), rat(1));
        let t = truncate(&u, Window::new(-3, 0));
        assert_eq!(t.len(), 1);
    }
}
