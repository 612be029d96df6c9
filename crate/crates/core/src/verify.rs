//! The reproduction suite: every classification count, face signature,
//! decorated count, orbit structure and genus fact, recomputed from the
//! catalog and compared with the reference values.

use crate::clock::Stopwatch;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{self, aa_edge, expected_invariants, NamedGraph, EXTENDABLE, NAMES};
use crate::classify::{decoration_orbits, symmetries, Decoration, DecorationKind, EmbeddingClass};
use crate::enumerate::{enumerate_classes, genus_with, SearchOptions};
use crate::error::Result;
use crate::extension::replay;
use crate::graph::Graph;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            s.push_str(&format!(
                "{mark} {:<28} expected {} observed {} ({} ms)\n",
                c.id, c.expected, c.observed, c.runtime_ms
            ));
        }
        let failed = self.failures().count();
        s.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        s
    }
}

/// Where the suite takes its graphs from. Overrides let a test swap in a
/// perturbed graph.
#[derive(Clone, Debug, Default)]
pub struct GraphSource {
    overrides: BTreeMap<String, Graph>,
}

impl GraphSource {
    pub fn builtin() -> Self {
        Self::default()
    }

    pub fn with_graph(mut self, name: &str, g: Graph) -> Self {
        self.overrides.insert(name.to_string(), g);
        self
    }

    pub fn get(&self, name: &str) -> Result<Graph> {
        match self.overrides.get(name) {
            Some(g) => Ok(g.clone()),
            None => catalog::builtin(name),
        }
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn run<T: ToString>(&mut self, id: &str, expected: T, f: impl FnOnce() -> Result<String>) {
        let start = Stopwatch::start();
        let expected = expected.to_string();
        let observed = f().unwrap_or_else(|e| format!("error: {e}"));
        self.checks.push(Check {
            id: id.to_string(),
            passed: observed == expected,
            expected,
            observed,
            runtime_ms: start.elapsed_ms() as u64,
        });
    }
}

fn signatures(classes: &[EmbeddingClass]) -> String {
    let mut sigs: Vec<Vec<usize>> = classes.iter().map(|c| c.face_signature.clone()).collect();
    sigs.sort();
    format!("{sigs:?}")
}

fn sorted_sizes(orbits: &[Vec<usize>]) -> String {
    let mut s: Vec<usize> = orbits.iter().map(Vec::len).collect();
    s.sort_unstable();
    format!("{s:?}")
}

/// Reference classification data.
pub fn expected_classes(name: &str) -> Option<(usize, Vec<Vec<usize>>)> {
    let s = |v: &[&[usize]]| v.iter().map(|x| x.to_vec()).collect::<Vec<_>>();
    Some(match name {
        "K33" => (2, s(&[&[4, 4, 10], &[6, 6, 6]])),
        "K5" => (6, Vec::new()),
        "E42" => (0, Vec::new()),
        "F11" => (2, s(&[&[4, 4, 4, 4, 10, 10], &[4, 4, 4, 4, 10, 10]])),
        "F12" => (4, s(&[&[4, 4, 6, 6, 8, 8], &[4, 4, 7, 7, 7, 7], &[5, 5, 5, 5, 8, 8], &[5, 5, 5, 5, 8, 8]])),
        "F13" => (2, s(&[&[5, 5, 5, 6, 6, 9], &[5, 5, 5, 7, 7, 7]])),
        "F14" => (2, s(&[&[5, 5, 5, 5, 6, 10], &[5, 5, 6, 6, 6, 8]])),
        "G1" => (2, s(&[&[4, 4, 6, 6, 10], &[4, 4, 6, 6, 10]])),
        _ => return None,
    })
}

fn toroidal(g: &Graph, opts: &SearchOptions) -> Result<Vec<EmbeddingClass>> {
    if !g.is_connected() {
        return crate::enumerate::toroidal_classes_with(g, opts);
    }
    Ok(enumerate_classes(g, "", 1, DecorationKind::None, opts)?.classes)
}

pub fn verify_paper(opts: &SearchOptions) -> VerificationReport {
    verify_with(&GraphSource::builtin(), opts)
}

pub fn verify_with(source: &GraphSource, opts: &SearchOptions) -> VerificationReport {
    let mut suite = Suite { checks: Vec::new() };
    let mut classes: BTreeMap<&str, Result<Vec<EmbeddingClass>>> = BTreeMap::new();
    for name in NAMES {
        let (count, _) = expected_classes(name).unwrap();
        suite.run(&format!("classes.{name}"), count, || {
            let found = source.get(name).and_then(|g| toroidal(&g, opts));
            classes.insert(name, found.clone());
            Ok(found?.len().to_string())
        });
    }
    let get = |name: &str| classes[name].clone();
    for name in NAMES {
        let (_, sigs) = expected_classes(name).unwrap();
        if !sigs.is_empty() {
            suite.run(&format!("signatures.{name}"), format!("{sigs:?}"), || Ok(signatures(&get(name)?)));
        }
    }

    let k33 = source.get("K33");
    for (kind, count) in [(DecorationKind::DirectedEdge, 6), (DecorationKind::Edge, 5), (DecorationKind::Cycle4, 5)] {
        suite.run(&format!("decorated.K33.{kind}"), count, || {
            Ok(enumerate_classes(&k33.clone()?, "K33", 1, kind, opts)?.classes.len().to_string())
        });
    }

    let k33_class = |sig: &[usize]| -> Result<EmbeddingClass> {
        get("K33")?
            .into_iter()
            .find(|c| c.face_signature == sig)
            .ok_or_else(|| crate::Error::Domain(format!("no K33 class with faces {sig:?}")))
    };
    for (sig, order, directed, cycles) in
        [(&[4, 4, 10][..], 4, "[2, 4, 4, 4, 4]", "[1, 2, 2, 4]"), (&[6, 6, 6][..], 36, "[18]", "[9]")]
    {
        let tag = sig.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-");
        suite.run(&format!("symmetries.K33.{tag}"), order, || {
            Ok(symmetries(&k33_class(sig)?.representative, true)?.len().to_string())
        });
        for (kind, expected) in [(DecorationKind::DirectedEdge, directed), (DecorationKind::Cycle4, cycles)] {
            suite.run(&format!("orbits.K33.{tag}.{kind}"), expected, || {
                let m = k33_class(sig)?.representative;
                let decs = Decoration::all_of_kind(kind, &m);
                Ok(sorted_sizes(&decoration_orbits(&m, &decs, true)?))
            });
        }
    }

    for name in EXTENDABLE {
        let r = replay(name);
        suite.run(&format!("replay.{name}"), "equal", || {
            let a: Vec<String> = r.clone()?.classes.iter().map(|c| c.canonical.to_hex()).collect();
            let b: Vec<String> = get(name)?.iter().map(|c| c.canonical.to_hex()).collect();
            Ok(if a == b { "equal" } else { "different" }.to_string())
        });
        if name == "F11" {
            suite.run("replay.F11.one-face-case", "[4]", || {
                let counts: Vec<usize> =
                    r.clone()?.cases.iter().filter(|c| c.decoration_on_one_face).map(|c| c.completions.len()).collect();
                Ok(format!("{counts:?}"))
            });
            suite.run("replay.F11.two-face-cases", "[0, 0, 0, 0]", || {
                let counts: Vec<usize> = r
                    .clone()?
                    .cases
                    .iter()
                    .filter(|c| !c.decoration_on_one_face)
                    .map(|c| c.completions.len())
                    .collect();
                Ok(format!("{counts:?}"))
            });
        }
    }

    let budget = opts.budget;
    suite.run("genus.K33", 1, || Ok(genus_with(&source.get("K33")?, budget)?.to_string()));
    suite.run("genus.E42", 2, || Ok(genus_with(&source.get("E42")?, budget)?.to_string()));
    suite.run("genus.additivity", "holds", || {
        let pairs = [("K33", "K5"), ("K33", "F11"), ("K5", "K5")];
        for (a, b) in pairs {
            let (ga, gb) = (source.get(a)?, source.get(b)?);
            let sum = genus_with(&ga, budget)? + genus_with(&gb, budget)?;
            if genus_with(&ga.disjoint_union(&gb), budget)? != sum {
                return Ok(format!("fails for {a} + {b}"));
            }
        }
        Ok("holds".to_string())
    });

    for name in NAMES {
        suite.run(&format!("catalog.{name}"), "[]", || {
            let ng = NamedGraph { name, graph: source.get(name)?, expected: expected_invariants(name)? };
            let bad: Vec<String> = ng.check()?.iter().map(|m| m.to_string()).collect();
            Ok(format!("{bad:?}"))
        });
    }
    suite.run("catalog.F12-F13-minus-aa", "homeomorphic", || {
        let strip = |n: &str| -> Result<Graph> {
            let (u, v) = aa_edge(n).unwrap();
            source.get(n)?.without_edge(u, v)?.suppress_degree2()
        };
        Ok(if strip("F12")?.is_isomorphic(&strip("F13")?)? { "homeomorphic" } else { "different" }.to_string())
    });

    let passed = suite.checks.iter().all(|c| c.passed);
    VerificationReport { passed, checks: suite.checks }
}
