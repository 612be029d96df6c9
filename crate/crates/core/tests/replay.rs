use toratlas::catalog::{builtin, EXTENDABLE};
use toratlas::enumerate::toroidal_classes;
use toratlas::extension::{polygon_decomposition, replay, replay_classification};

fn raw_totals(name: &str) -> Vec<usize> {
    replay(name).unwrap().cases.iter().map(|c| c.completions.len()).collect()
}

#[test]
fn replay_matches_enumeration() {
    for name in EXTENDABLE {
        let a: Vec<_> = replay_classification(name).unwrap().into_iter().map(|c| c.canonical).collect();
        let b: Vec<_> = toroidal_classes(&builtin(name).unwrap()).unwrap().into_iter().map(|c| c.canonical).collect();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn case_counts() {
    for (name, cases) in [("F11", 5), ("F12", 12), ("F13", 12), ("F14", 5), ("G1", 6)] {
        assert_eq!(replay(name).unwrap().cases.len(), cases, "{name}");
    }
}

#[test]
fn raw_completion_totals() {
    for (name, total) in [("F11", 8), ("F12", 9), ("F13", 8), ("F14", 3), ("G1", 6)] {
        assert_eq!(raw_totals(name).iter().sum::<usize>(), total, "{name}");
    }
}

#[test]
fn f11_only_the_one_face_case_survives() {
    let r = replay("F11").unwrap();
    for case in &r.cases {
        assert_eq!(case.completions.is_empty(), !case.decoration_on_one_face);
    }
}

#[test]
fn completions_restrict_to_the_scaffold() {
    for name in EXTENDABLE {
        let r = replay(name).unwrap();
        for case in &r.cases {
            for c in &case.completions {
                assert_eq!(c.genus().unwrap(), 1);
                let extra = c.graph().vertex_count() - r.scaffold.vertex_count();
                let h = c.submap(&r.scaffold.with_vertices(extra)).unwrap();
                assert_eq!(h.face_count(), c.face_count() - (c.graph().edge_count() - r.scaffold.edge_count() - extra));
                assert_eq!(h.genus_sum(), 1);
            }
        }
    }
}

#[test]
fn decompositions_of_known_embeddings() {
    let sides = |name: &str, sig: &[usize]| {
        let class =
            toroidal_classes(&builtin(name).unwrap()).unwrap().into_iter().find(|c| c.face_signature == sig).unwrap();
        let mut s: Vec<usize> = polygon_decomposition(&class.representative).iter().map(|p| p.sides()).collect();
        s.sort_unstable();
        s
    };
    assert_eq!(sides("F11", &[4, 4, 4, 4, 10, 10]), [4, 4, 4, 4, 10, 10]);
    assert_eq!(sides("F12", &[4, 4, 6, 6, 8, 8]), [4, 4, 6, 6, 8, 8]);
}
