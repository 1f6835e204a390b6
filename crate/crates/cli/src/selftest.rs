//! The embedded golden corpus.

use seatplan::reductions::{Reduction, SourceProblem};
use seatplan::{Oracle, Problem, SeatGraph};
use serde_json::json;

use crate::commands::{reduction_document, solve, Failure, Method, Outcome, EXIT_INFEASIBLE, EXIT_OK};
use crate::document::InstanceDocument;
use crate::report::Report;

enum Expect {
    /// Optimal objective for MWA and MUA.
    Objective(Problem, &'static str),
    Feasible(Problem, bool),
    Pof(&'static str),
    Pos(&'static str),
}

struct Case {
    name: &'static str,
    text: &'static str,
    expect: &'static [Expect],
}

const CORPUS: &[Case] = &[
    Case {
        name: "unbounded_5_1",
        text: include_str!("../corpus/unbounded_5_1.json"),
        expect: &[
            Expect::Objective(Problem::Mwa, "10"),
            Expect::Objective(Problem::Mua, "1"),
            Expect::Pof("5/2"),
        ],
    },
    Case {
        name: "no_envy_p3",
        text: include_str!("../corpus/no_envy_p3.json"),
        expect: &[
            Expect::Feasible(Problem::Efa, false),
            Expect::Feasible(Problem::Sta, true),
            Expect::Objective(Problem::Mwa, "4"),
        ],
    },
    Case {
        name: "binary_4",
        text: include_str!("../corpus/binary_4.json"),
        expect: &[Expect::Objective(Problem::Mwa, "14"), Expect::Pof("7/4")],
    },
    Case {
        name: "symmetric_triangles_6",
        text: include_str!("../corpus/symmetric_triangles_6.json"),
        expect: &[Expect::Objective(Problem::Mwa, "38"), Expect::Pos("1")],
    },
    Case {
        name: "strict_edge_plus_isolated",
        text: include_str!("../corpus/strict_edge_plus_isolated.json"),
        expect: &[
            Expect::Feasible(Problem::Efa, true),
            Expect::Objective(Problem::Mwa, "4"),
            Expect::Objective(Problem::Mua, "0"),
        ],
    },
    Case {
        name: "symmetric_path5",
        text: include_str!("../corpus/symmetric_path5.json"),
        expect: &[
            Expect::Objective(Problem::Mwa, "28"),
            Expect::Feasible(Problem::Sta, true),
            Expect::Feasible(Problem::Efa, false),
            Expect::Pos("1"),
        ],
    },
    Case {
        name: "mwa_kclique_triangle",
        text: include_str!("../corpus/mwa_kclique_triangle.json"),
        expect: &[Expect::Objective(Problem::Mwa, "6")],
    },
];

fn graph(n: usize, edges: &[(usize, usize)]) -> SeatGraph {
    SeatGraph::new(n, edges.iter().copied()).expect("corpus graphs are simple")
}

/// One small source per reduction, for the generator round trip.
fn sources() -> Vec<(Reduction, SourceProblem)> {
    let triangle = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let p3 = graph(3, &[(0, 1), (1, 2)]);
    vec![
        (
            Reduction::StaExchangeRoommates,
            SourceProblem::ExchangeRoommates {
                lists: vec![
                    vec![vec![1], vec![2], vec![3]],
                    vec![vec![0], vec![2, 3]],
                    vec![vec![3], vec![0], vec![1]],
                    vec![vec![2], vec![0, 1]],
                ],
            },
        ),
        (Reduction::EfaTriangles, SourceProblem::PartitionIntoTriangles { graph: triangle.clone() }),
        (Reduction::EfaCliqueIs, SourceProblem::KClique { graph: p3.clone(), k: 2 }),
        (
            Reduction::Efa3Partition,
            SourceProblem::ThreePartition {
                values: vec![4, 4, 4, 4, 4, 4],
                bound: 12,
            },
        ),
        (
            Reduction::MwaSpanning,
            SourceProblem::SpanningSubgraphIso {
                pattern: p3.clone(),
                host: triangle.clone(),
            },
        ),
        (
            Reduction::MuaSpanningRegular,
            SourceProblem::SpanningSubgraphIso {
                pattern: triangle.clone(),
                host: triangle.clone(),
            },
        ),
        (Reduction::MwaKclique, SourceProblem::KClique { graph: triangle, k: 3 }),
        (Reduction::MuaPartition, SourceProblem::Partition { values: vec![1, 1, 2] }),
        (Reduction::EfaPartition, SourceProblem::Partition { values: vec![1, 1, 2] }),
        (
            Reduction::LocalStaIndependentSet,
            SourceProblem::IndependentSet {
                graph: graph(4, &[(0, 1), (1, 2), (2, 3)]),
                k: 1,
            },
        ),
    ]
}

fn check_case(oracle: &Oracle, case: &Case) -> Result<(), String> {
    let doc = InstanceDocument::parse(case.text).map_err(|e| e.to_string())?;
    let loaded = doc.load().map_err(|e| e.to_string())?;
    if InstanceDocument::parse(&doc.to_json()).map_err(|e| e.to_string())? != doc {
        return Err("document does not round-trip".into());
    }
    let inst = &loaded.instance;
    for expect in case.expect {
        match *expect {
            Expect::Objective(problem, _) | Expect::Feasible(problem, _) => {
                let (method, auto) = solve(oracle, problem, Method::Auto, inst).map_err(|e| e.to_string())?;
                let (_, brute) = solve(oracle, problem, Method::Brute, inst).map_err(|e| e.to_string())?;
                for (label, r) in [(method.name(), &auto), ("brute", &brute)] {
                    if !r.verify(inst).map_err(|e| e.to_string())? {
                        return Err(format!("{} witness from {label} fails verification", problem.name()));
                    }
                }
                if auto.feasible != brute.feasible || auto.objective != brute.objective {
                    return Err(format!("{} {} disagrees with brute", problem.name(), method.name()));
                }
                match *expect {
                    Expect::Objective(_, want) => {
                        let got = brute.objective.map(|o| o.to_string()).unwrap_or_default();
                        if got != want {
                            return Err(format!("{} objective {got}, expected {want}", problem.name()));
                        }
                    }
                    Expect::Feasible(_, want) if brute.feasible != want => {
                        return Err(format!("{} feasible = {}, expected {want}", problem.name(), brute.feasible));
                    }
                    _ => {}
                }
            }
            Expect::Pof(want) | Expect::Pos(want) => {
                let price = match expect {
                    Expect::Pof(_) => oracle.price_of_fairness(inst),
                    _ => oracle.price_of_stability(inst),
                }
                .map_err(|e| e.to_string())?;
                if price.value.to_string() != want {
                    return Err(format!("price {}, expected {want}", price.value));
                }
            }
        }
    }
    Ok(())
}

fn check_generator(reduction: Reduction, source: &SourceProblem) -> Result<(), String> {
    let doc = reduction_document(reduction, source).map_err(|e| e.to_string())?;
    let back = InstanceDocument::parse(&doc.to_json()).map_err(|e| e.to_string())?;
    if back != doc {
        return Err("generated document does not round-trip".into());
    }
    back.load().map_err(|e| e.to_string())?;
    Ok(())
}

pub fn run(oracle: &Oracle) -> Result<Outcome, Failure> {
    let mut results = Vec::new();
    for case in CORPUS {
        results.push((case.name.to_string(), check_case(oracle, case)));
    }
    for (reduction, source) in sources() {
        results.push((format!("gen:{}", reduction.id()), check_generator(reduction, &source)));
    }
    let failed = results.iter().filter(|(_, r)| r.is_err()).count();
    let cases: Vec<_> = results
        .iter()
        .map(|(name, r)| match r {
            Ok(()) => json!({ "name": name, "passed": true }),
            Err(e) => json!({ "name": name, "passed": false, "detail": e }),
        })
        .collect();
    let mut report = Report::new();
    report
        .set("cases", cases)
        .set("passed", results.len() - failed)
        .set("failed", failed);
    Ok(Outcome {
        report: report.render(),
        code: if failed == 0 { EXIT_OK } else { EXIT_INFEASIBLE },
    })
}
