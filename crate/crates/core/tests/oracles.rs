//! Independent oracles for coloring counts and enumeration sizes.

use quandle_kit::diagram::{corpus_diagram, PreparedDiagram};
use quandle_kit::invariants::{brute_force_colorings, crossing_arcs, enumerate_colorings};
use quandle_kit::quandle::{dihedral_quandle, enumerate_quandles, trivial_quandle, QuandleTable};

/// Tetrahedral quandle: 3-cycles of A4, equivalently the Alexander quandle
/// on GF(4) with `a ∗ b = ω·a + ω²·b`.
fn tetrahedral() -> QuandleTable {
    QuandleTable::from_rows(&[vec![0, 2, 3, 1], vec![3, 1, 0, 2], vec![1, 3, 2, 0], vec![2, 0, 1, 3]]).unwrap()
}

/// Alexander quandle on GF(4) built from field arithmetic, as a check on
/// the hard-coded table.
fn gf4_alexander() -> QuandleTable {
    // elements 0, 1, w, w² encoded as bit pairs; multiplication via logs
    let mul = |a: usize, b: usize| -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let log = |x: usize| [0, 0, 1, 2][x];
        let exp = [1usize, 2, 3];
        exp[(log(a) + log(b)) % 3]
    };
    let (w, w2) = (2, 3);
    let rows = (0..4).map(|a| (0..4).map(|b| mul(w, a) ^ mul(w2, b)).collect()).collect::<Vec<Vec<usize>>>();
    QuandleTable::from_rows(&rows).unwrap()
}

/// Fox p-colorings counted as `p^(arcs − rank)` of the coloring matrix mod p.
fn fox_colorings(p: &PreparedDiagram, modulus: i64) -> u64 {
    let arcs = p.arcs.len();
    let mut rows: Vec<Vec<i64>> = (0..p.diagram.crossing_count())
        .map(|c| {
            let t = crossing_arcs(p, c);
            let mut row = vec![0i64; arcs];
            row[t.over] += 2;
            row[t.source] -= 1;
            row[t.target] -= 1;
            row.iter().map(|v| v.rem_euclid(modulus)).collect()
        })
        .collect();
    let inv = |a: i64| (1..modulus).find(|b| a * b % modulus == 1).expect("prime modulus");
    let mut rank = 0;
    for col in 0..arcs {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let f = inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = *v * f % modulus;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let k = rows[r][col];
                for j in 0..arcs {
                    rows[r][j] = (rows[r][j] - k * rows[rank][j]).rem_euclid(modulus);
                }
            }
        }
        rank += 1;
    }
    (modulus as u64).pow((arcs - rank) as u32)
}

#[test]
fn tetrahedral_table_is_gf4_alexander() {
    assert!(tetrahedral().is_isomorphic(&gf4_alexander()));
    assert!(tetrahedral().is_connected());
}

#[test]
fn quandle_counts_up_to_isomorphism() {
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_quandles(n, true).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 3, 7, 22]);
    let connected4 = enumerate_quandles(4, true).unwrap().into_iter().filter(|q| q.is_connected()).count();
    assert_eq!(connected4, 1);
}

#[test]
fn dihedral_counts_match_fox_colorings() {
    for p in [3usize, 5, 7] {
        let x = dihedral_quandle(p).unwrap();
        for name in ["trefoil", "figure8", "5_1", "5_2", "trefoil_kinked", "figure8_kinked", "hopf", "borromean"] {
            let d = corpus_diagram(name).unwrap();
            assert_eq!(
                enumerate_colorings(&d, &x).len() as u64,
                fox_colorings(&d, p as i64),
                "{name} with D{p}"
            );
        }
    }
}

#[test]
fn known_coloring_counts() {
    let cases: [(&str, QuandleTable, usize); 9] = [
        ("trefoil", dihedral_quandle(3).unwrap(), 9),
        ("figure8", dihedral_quandle(3).unwrap(), 3),
        ("figure8", dihedral_quandle(5).unwrap(), 25),
        ("5_1", dihedral_quandle(5).unwrap(), 25),
        ("trefoil", dihedral_quandle(5).unwrap(), 5),
        ("trefoil", tetrahedral(), 16),
        ("figure8", tetrahedral(), 16),
        ("5_1", tetrahedral(), 4),
        ("5_2", tetrahedral(), 4),
    ];
    for (name, x, expected) in cases {
        assert_eq!(enumerate_colorings(&corpus_diagram(name).unwrap(), &x).len(), expected, "{name}");
    }
}

#[test]
fn trivial_quandle_colors_components() {
    for n in 1..=4 {
        let t = trivial_quandle(n).unwrap();
        for (name, comps) in [("trefoil", 1u32), ("5_2", 1), ("hopf", 2), ("unlink2", 2), ("borromean", 3), ("unlink3", 3)] {
            let count = enumerate_colorings(&corpus_diagram(name).unwrap(), &t).len();
            assert_eq!(count, n.pow(comps), "{name} with T{n}");
        }
    }
}

#[test]
fn backtracking_matches_scan_on_larger_diagrams() {
    for x in [dihedral_quandle(3).unwrap(), tetrahedral()] {
        for name in ["5_1", "5_2", "borromean", "figure8_kinked"] {
            let d = corpus_diagram(name).unwrap();
            assert_eq!(enumerate_colorings(&d, &x), brute_force_colorings(&d, &x), "{name}");
        }
    }
}
