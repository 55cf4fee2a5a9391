//! Copy structure of the burnt pancake graph: the vertices ending in `p`
//! form a copy of `BP_{n-1}`, and only the flip `r_n` leaves it.

use std::collections::HashSet;

use pancake::graph::copy_of;
use pancake::{AnyPerm, GraphKind};

fn all_vertices(g: GraphKind) -> Vec<AnyPerm> {
    (0..g.order().unwrap()).map(|r| g.unrank(r).unwrap()).collect()
}

#[test]
fn inner_flips_stay_in_the_copy() {
    for n in 2..=4 {
        let g = GraphKind::burnt(n).unwrap();
        for v in all_vertices(g) {
            for i in 1..n {
                assert_eq!(copy_of(&g.apply_flip(&v, i).unwrap()), copy_of(&v));
            }
        }
    }
}

#[test]
fn the_outer_flip_changes_the_absolute_copy_label() {
    for n in 2..=5 {
        let g = GraphKind::burnt(n).unwrap();
        for v in all_vertices(g) {
            let u = g.apply_flip(&v, n).unwrap();
            let (p, q) = (copy_of(&v).unwrap().last, copy_of(&u).unwrap().last);
            assert_ne!(p.abs(), q.abs(), "{v} -> {u}");
        }
    }
}

#[test]
fn nearby_vertices_of_a_copy_leave_it_for_different_copies() {
    for n in 2..=4 {
        let g = GraphKind::burnt(n).unwrap();
        for u in all_vertices(g) {
            // Everything within two inner flips of u, u itself excluded.
            let mut near = HashSet::new();
            for i in 1..n {
                let a = g.apply_flip(&u, i).unwrap();
                for j in 1..n {
                    near.insert(g.apply_flip(&a, j).unwrap());
                }
                near.insert(a);
            }
            near.remove(&u);
            let out_u = copy_of(&g.apply_flip(&u, n).unwrap()).unwrap();
            for v in near {
                assert_eq!(copy_of(&v), copy_of(&u));
                let out_v = copy_of(&g.apply_flip(&v, n).unwrap()).unwrap();
                assert_ne!(out_u, out_v, "{u} and {v}");
            }
        }
    }
}
