//! Cross-check of relation generation: IHX rows built from every graph with
//! one 4-valent vertex must span the same space as the rows obtained by
//! expanding basis representatives.

use num_bigint::BigInt;

use super::{class_basis, express, ihx_expand, relation_matrix, Expressed, HomologyOptions};
use crate::exactla::{rank, SparseIntMatrix};
use crate::multigraph::{bfs_multigraphs, pairing_with_degrees, DartGraph, TadpolePolicy};
use crate::orientation::{Convention, LabelledGraph};

/// Splits the 4-valent root (darts 0..4) into `u = {x, p0, p1}` and
/// `v = {y, p2, p3}` joined by the new edge `x - y`.
fn split_root(pairing4: &[usize], num_vertices: usize) -> DartGraph {
    let map = |o: usize| match o {
        0 => 1,
        1 => 2,
        2 => 4,
        3 => 5,
        o => o + 2,
    };
    let mut p = vec![0; 3 * num_vertices];
    for (o, &q) in pairing4.iter().enumerate() {
        p[map(o)] = map(q);
    }
    p[0] = 3;
    p[3] = 0;
    DartGraph::from_involution(num_vertices, p).expect("splitting keeps the graph connected")
}

fn contraction_rows(k: usize, convention: Convention, policy: TadpolePolicy) -> (SparseIntMatrix, SparseIntMatrix) {
    let basis = class_basis(k, convention, policy).unwrap();
    let mut degrees = vec![3; 2 * k - 1];
    degrees[0] = 4;
    let mut m = SparseIntMatrix::new(basis.len());
    for edges in bfs_multigraphs(&degrees, true) {
        let g = split_root(&pairing_with_degrees(&degrees, &edges), 2 * k);
        let lg = LabelledGraph::reference(g);
        let e = lg.graph.edge_index_of_darts()[0];
        let ex = ihx_expand(&lg, e).unwrap();
        let mut row = Vec::new();
        for (_, c, t) in &ex.terms {
            if let Expressed::Class { class_id, sign } = express(t, &basis).unwrap() {
                row.push((class_id, BigInt::from(c * sign.to_i64())));
            }
        }
        m.push_row(row);
    }
    let generated = relation_matrix(&basis, &HomologyOptions::default()).unwrap().matrix();
    (m, generated)
}

#[test]
fn contraction_rows_span_the_same_space() {
    for k in 1..=3 {
        for convention in [Convention::Even, Convention::Odd] {
            for policy in [TadpolePolicy::Exclude, TadpolePolicy::Include] {
                let (a, b) = contraction_rows(k, convention, policy);
                let mut both = a.clone();
                for r in b.rows() {
                    both.push_row(r.clone());
                }
                let (ra, rb, rab) = (rank(&a).unwrap(), rank(&b).unwrap(), rank(&both).unwrap());
                assert_eq!((ra, rb), (rab, rab), "k={k} {convention:?} {policy:?}");
            }
        }
    }
}
