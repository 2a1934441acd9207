//! The recursive wreath model against a permutation-group brute force:
//! `P_{2^k}` built as permutations of `2^k` points, classes found as
//! conjugation orbits, characters checked by summing over elements.

use std::collections::{BTreeMap, HashMap, HashSet};

use sbc_core::wreath::{char_value, level_size, ClassDescriptor, IrrLabel, WreathTower};
use sbc_core::CycleType;

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a ∘ b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

fn inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn cycle_type(a: &Perm) -> CycleType {
    let mut seen = vec![false; a.len()];
    let mut lengths = Vec::new();
    for s in 0..a.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = a[i];
            len += 1;
        }
        if len > 0 {
            lengths.push(len);
        }
    }
    CycleType::new(lengths)
}

fn base(g1: &Perm, g2: &Perm) -> Perm {
    let m = g1.len();
    g1.iter().copied().chain(g2.iter().map(|&i| i + m)).collect()
}

fn swap(m: usize) -> Perm {
    (0..2 * m).map(|i| (i + m) % (2 * m)).collect()
}

fn group(k: u32) -> Vec<Perm> {
    if k == 0 {
        return vec![vec![0]];
    }
    let sub = group(k - 1);
    let s = swap(1 << (k - 1));
    let mut out = Vec::new();
    for g1 in &sub {
        for g2 in &sub {
            let b = base(g1, g2);
            out.push(compose(&b, &s));
            out.push(b);
        }
    }
    out
}

/// Splits `σ` as `(g₁, g₂)` or `(g₁, g₂)·swap`.
fn split(sigma: &Perm) -> (Perm, Perm, bool) {
    let m = sigma.len() / 2;
    let outer = sigma[0] >= m;
    let b = if outer { compose(sigma, &swap(m)) } else { sigma.clone() };
    let g1 = b[..m].to_vec();
    let g2 = b[m..].iter().map(|&i| i - m).collect();
    (g1, g2, outer)
}

fn descriptor(sigma: &Perm, tower: &WreathTower) -> ClassDescriptor {
    if sigma.len() == 1 {
        return ClassDescriptor::Identity;
    }
    let (g1, g2, outer) = split(sigma);
    if outer {
        ClassDescriptor::Outer(Box::new(descriptor(&compose(&g1, &g2), tower)))
    } else {
        let (a, b) = (descriptor(&g1, tower), descriptor(&g2, tower));
        let (ia, ib) = (tower.class_index(&a).unwrap(), tower.class_index(&b).unwrap());
        if ia <= ib {
            ClassDescriptor::Base(Box::new(a), Box::new(b))
        } else {
            ClassDescriptor::Base(Box::new(b), Box::new(a))
        }
    }
}

fn orbits(elems: &[Perm]) -> Vec<Vec<usize>> {
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut assigned = vec![false; elems.len()];
    let mut out = Vec::new();
    for i in 0..elems.len() {
        if assigned[i] {
            continue;
        }
        let mut orbit = HashSet::new();
        for h in elems {
            let c = compose(&compose(h, &elems[i]), &inverse(h));
            orbit.insert(index[&c]);
        }
        for &j in &orbit {
            assigned[j] = true;
        }
        let mut orbit: Vec<usize> = orbit.into_iter().collect();
        orbit.sort();
        out.push(orbit);
    }
    out
}

#[test]
fn classes_match_conjugation_orbits() {
    let tower = WreathTower::default();
    for k in 0..=3 {
        let elems = group(k);
        assert_eq!(elems.len() as u128, tower.level(k).unwrap().order());
        let orbits = orbits(&elems);
        assert_eq!(orbits.len() as u64, level_size(k), "level {k}");
        let classes = tower.classes(k).unwrap();
        let mut seen = HashSet::new();
        for orbit in &orbits {
            let d = descriptor(&elems[orbit[0]], &tower);
            for &j in orbit {
                assert_eq!(descriptor(&elems[j], &tower), d, "descriptor not a class invariant");
            }
            let idx = tower.class_index(&d).unwrap();
            assert!(seen.insert(idx), "two orbits share descriptor {d}");
            assert_eq!(classes[idx].size, orbit.len() as u128);
            assert_eq!(classes[idx].cycle_type, cycle_type(&elems[orbit[0]]));
        }
    }
}

#[test]
fn dihedral_table_at_level_two() {
    let tower = WreathTower::default();
    let elems = group(2);
    // the group has order 8, a 4-cycle, and 5 classes: it is D₈
    assert!(elems.iter().any(|g| cycle_type(g) == CycleType::new(vec![4])));
    let table = tower.char_table(2).unwrap();
    let mut rows: Vec<Vec<i64>> = (0..5).map(|i| table.row(i).to_vec()).collect();
    rows.sort();
    let sizes = tower.level(2).unwrap().class_sizes().to_vec();
    let mut by_size: BTreeMap<u128, usize> = BTreeMap::new();
    for s in &sizes {
        *by_size.entry(*s).or_default() += 1;
    }
    assert_eq!(by_size, BTreeMap::from([(1, 2), (2, 3)]));
    // four linear characters and one of degree 2 vanishing off the centre
    let deg2: Vec<_> = rows.iter().filter(|r| r[0] == 2).collect();
    assert_eq!(deg2.len(), 1);
    let centre: Vec<usize> = (0..5).filter(|&c| sizes[c] == 1).collect();
    for (c, &v) in deg2[0].iter().enumerate() {
        if !centre.contains(&c) {
            assert_eq!(v, 0);
        }
    }
}

#[test]
fn characters_by_element_sums() {
    let tower = WreathTower::default();
    for k in 1..=3 {
        let elems = group(k);
        let order = elems.len() as i64;
        let classes: Vec<ClassDescriptor> = elems.iter().map(|g| descriptor(g, &tower)).collect();
        let labels = tower.irr_labels(k).unwrap();
        let values: Vec<Vec<i64>> =
            labels.iter().map(|l| classes.iter().map(|c| char_value(l, c).unwrap()).collect()).collect();
        for (i, a) in values.iter().enumerate() {
            for (j, b) in values.iter().enumerate() {
                let s: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                assert_eq!(s, if i == j { order } else { 0 }, "level {k}: {} vs {}", labels[i], labels[j]);
            }
        }
        // the natural permutation character is a non-negative integer combination
        let fixed: Vec<i64> =
            elems.iter().map(|g| g.iter().enumerate().filter(|(i, &j)| *i == j).count() as i64).collect();
        for row in &values {
            let s: i64 = row.iter().zip(&fixed).map(|(x, y)| x * y).sum();
            assert!(s >= 0 && s % order == 0);
        }
        // tensor products of irreducibles decompose with non-negative integer coefficients
        for a in &values {
            for b in &values {
                for c in &values {
                    let s: i64 = (0..elems.len()).map(|g| a[g] * b[g] * c[g]).sum();
                    assert!(s >= 0 && s % order == 0);
                }
            }
        }
    }
}

/// `Ind(φ₁, φ₂)` from the induction formula over the base group.
#[test]
fn induced_values_by_induction_formula() {
    let tower = WreathTower::default();
    for k in 1..=3 {
        let elems = group(k);
        let sub = k - 1;
        let m = 1usize << sub;
        let base_order = (elems.len() / 2) as i64;
        let sub_class = |g: &Perm| descriptor(g, &tower);
        for l in tower.irr_labels(k).unwrap() {
            let IrrLabel::Ind(p, q) = &l else { continue };
            for sigma in &elems {
                let mut total = 0i64;
                for x in &elems {
                    let c = compose(&compose(x, sigma), &inverse(x));
                    let (g1, g2, outer) = split(&c);
                    if outer {
                        continue;
                    }
                    assert_eq!(g1.len(), m);
                    total += char_value(p, &sub_class(&g1)).unwrap() * char_value(q, &sub_class(&g2)).unwrap();
                }
                assert_eq!(total % base_order, 0);
                let want = total / base_order;
                assert_eq!(char_value(&l, &descriptor(sigma, &tower)).unwrap(), want, "{l}");
            }
        }
    }
}

/// Level 5 has no dense table; orthogonality is checked on a spread of rows
/// and columns through the recursive column evaluator.
#[test]
fn level_five_orthogonality_sampled() {
    let tower = WreathTower::default();
    let n = level_size(5) as usize;
    let picks: Vec<usize> = (0..n).step_by(n / 47).chain([n - 1]).collect();
    tower.check_sampled(5, &picks, &picks).unwrap();
}
