//! Every even symmetric matrix mod 4 of size at most 3: orbits under the
//! full group agree with the canonical parameters.

use std::collections::{BTreeSet, HashMap};

use quasicartan_core::*;

fn all_residue_matrices(n: usize) -> Vec<SymEvenMatrix> {
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut code = vec![0u8; upper.len()];
    loop {
        let mut m = IntMatrix::zeros(n);
        for (&(i, j), &c) in upper.iter().zip(&code) {
            let v = Int::from(if i == j { 2 * (c as i64 % 2) } else { c as i64 });
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
        out.push(SymEvenMatrix::new(m).unwrap());
        let mut pos = 0;
        loop {
            if pos == code.len() {
                return out;
            }
            let (i, j) = upper[pos];
            let radix = if i == j { 2 } else { 4 };
            code[pos] += 1;
            if code[pos] < radix {
                break;
            }
            code[pos] = 0;
            pos += 1;
        }
    }
}

fn key(a: &SymEvenMatrix) -> Vec<u8> {
    a.as_matrix().residues(4).into_iter().map(|x| x as u8).collect()
}

#[test]
fn orbits_match_canonical_params() {
    for n in 1..=3 {
        let mats = all_residue_matrices(n);
        assert_eq!(mats.len(), 2usize.pow(n as u32) * 4usize.pow((n * (n - 1) / 2) as u32));
        let mut orbit_of: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut orbits = 0;
        for a in &mats {
            if orbit_of.contains_key(&key(a)) {
                continue;
            }
            for m in brute_force_orbit_mod4(a).unwrap() {
                orbit_of.insert(m, orbits);
            }
            orbits += 1;
        }
        let mut params_of_orbit: HashMap<usize, CanonicalParams> = HashMap::new();
        let mut seen = BTreeSet::new();
        for a in &mats {
            let c = reduce_mod4(a).unwrap().params;
            let o = orbit_of[&key(a)];
            assert_eq!(*params_of_orbit.entry(o).or_insert(c), c, "orbit {o} has two normal forms");
            seen.insert(c);
        }
        assert_eq!(seen.len(), orbits, "n = {n}: distinct params vs orbits");
    }
}

#[test]
fn class_counts_small() {
    // Canonical parameter tuples of dimension n.
    let count = |n: usize| {
        let mut c = 0;
        for r in 0..=1 {
            for s in 0..=n / 2 {
                for t in 0..=n / 2 {
                    for p in 0..=2 {
                        for m in 0..=n {
                            let x = NormalFormParams::new(r, s, t, p, m);
                            if x.dim() == n && x.is_canonical() {
                                c += 1;
                            }
                        }
                    }
                }
            }
        }
        c
    };
    for n in 1..=3 {
        let seen: BTreeSet<_> = all_residue_matrices(n).iter().map(|a| reduce_mod4(a).unwrap().params).collect();
        assert_eq!(seen.len(), count(n), "n = {n}");
    }
}

#[test]
fn reports_round_trip_through_json() {
    let a = SymEvenMatrix::new(IntMatrix::from_rows([[2, 1, 0], [1, 2, 1], [0, 1, 2]]).unwrap()).unwrap();
    let prof = invariant_profile(&a).unwrap();
    let text = serde_json::to_string(&prof).unwrap();
    let back: InvariantProfile = serde_json::from_str(&text).unwrap();
    assert_eq!(back, prof);

    let b = SkewSymMatrix::new(IntMatrix::from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]).unwrap()).unwrap();
    let rep = scan_class(&b, 3, 50);
    let back: ClassScanReport = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(back, rep);
}
