//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report is always printed; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relabel_core::exact_path::{path_distance, path_exact_t_feasible};
use relabel_core::exact_star::{star_distance, star_flip_sequence, star_max_distance, star_q};
use relabel_core::oracle::ConfigurationSpace;
use relabel_core::privileged::{resolve, sw_swap, PrivilegedInstance};
use relabel_core::reductions::{edge_to_vertex, vertex_to_edge, EdgeInstance, VertexInstance};
use relabel_core::transform::spanning_tree_transform;
use relabel_core::{apply_sequence, EdgeLabeling, Graph, Permutation, VertexFlip, VertexLabeling};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "path exactness",
            budget: secs(30),
            run: path_exactness,
        },
        Criterion {
            id: 2,
            name: "parity of exact-t walks on P_4",
            budget: secs(10),
            run: path_parity,
        },
        Criterion {
            id: 3,
            name: "star exactness",
            budget: secs(60),
            run: star_exactness,
        },
        Criterion {
            id: 4,
            name: "q moves by one per flip",
            budget: secs(10),
            run: q_moves_by_one,
        },
        Criterion {
            id: 5,
            name: "constructive upper bound",
            budget: secs(60),
            run: constructive_bound,
        },
        Criterion {
            id: 6,
            name: "reduction soundness",
            budget: secs(300),
            run: reduction_soundness,
        },
        Criterion {
            id: 7,
            name: "privileged characterization",
            budget: secs(300),
            run: privileged_characterization,
        },
        Criterion {
            id: 8,
            name: "puzzle halving",
            budget: secs(1),
            run: puzzle_halving,
        },
        Criterion {
            id: 9,
            name: "SW cost",
            budget: secs(10),
            run: sw_cost,
        },
        Criterion {
            id: 10,
            name: "star greedy optimality",
            budget: secs(60),
            run: star_greedy,
        },
    ];
    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&e))));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.budget => Err(format!(
                "{detail}; but took {:.2}s, over the {}s budget",
                took.as_secs_f64(),
                c.budget.as_secs()
            )),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {:>2} {tag} [{}] {:.2}s: {detail}",
            c.id,
            c.name,
            took.as_secs_f64()
        );
        if outcome.is_err() {
            failed.push(c.id);
        }
    }
    panic::set_hook(default_hook);
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vl(v: &[usize]) -> VertexLabeling {
    VertexLabeling::new(v.to_vec()).expect("valid labeling")
}

/// Every labeling of the space, indexed by rank.
fn all_states(space: &ConfigurationSpace) -> Vec<Vec<usize>> {
    let total = space.state_count() as u64;
    let mut buf = Vec::new();
    (0..total)
        .map(|r| {
            space.unrank(r, &mut buf);
            buf.clone()
        })
        .collect()
}

/// Compares a closed-form distance against BFS for every ordered pair of
/// labelings of `g`, returning the largest distance seen.
fn all_pairs_agree(
    g: &Graph,
    formula: impl Fn(&VertexLabeling, &VertexLabeling) -> usize,
) -> Result<usize, String> {
    let space = ConfigurationSpace::vertex(g);
    let table = space.transition_table().map_err(|e| e.to_string())?;
    let states: Vec<VertexLabeling> = all_states(&space).iter().map(|s| vl(s)).collect();
    let mut max = 0;
    for (src, from) in states.iter().enumerate() {
        let dist = table.distances_from_rank(src as u64);
        for (dst, to) in states.iter().enumerate() {
            let bfs = dist.get_rank(dst as u64).ok_or("unreachable state")?;
            let f = formula(from, to);
            if f != bfs {
                return Err(format!(
                    "n={} {:?} -> {:?}: formula {f}, BFS {bfs}",
                    g.n(),
                    from.labels(),
                    to.labels()
                ));
            }
            max = max.max(bfs);
        }
    }
    Ok(max)
}

fn path_exactness() -> Outcome {
    let mut pairs = 0usize;
    for n in 3..=7 {
        let max = all_pairs_agree(&Graph::path(n).unwrap(), |a, b| {
            path_distance(a, b).unwrap()
        })?;
        ensure(max == n * (n - 1) / 2, || {
            format!("P_{n}: max distance {max}, expected {}", n * (n - 1) / 2)
        })?;
        pairs += (1..=n).product::<usize>().pow(2);
    }
    Ok(format!(
        "{pairs} pairs on P_3..P_7 agree with BFS; P_7 max 21"
    ))
}

fn path_parity() -> Outcome {
    let g = Graph::path(4).unwrap();
    let space = ConfigurationSpace::vertex(&g);
    let states = all_states(&space);
    let mut checks = 0;
    for a in &states {
        for b in &states {
            let (pa, pb) = (
                Permutation::new(a.clone()).unwrap(),
                Permutation::new(b.clone()).unwrap(),
            );
            for t in 0..=10 {
                let formula = path_exact_t_feasible(&vl(a), &vl(b), t).unwrap();
                let oracle = space.reachable_in_exactly(&pa, &pb, t).unwrap();
                ensure(formula == oracle, || {
                    format!("{a:?} -> {b:?}, t={t}: formula {formula}, oracle {oracle}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (pair, t) checks agree"))
}

fn star_exactness() -> Outcome {
    let mut pairs = 0usize;
    for n in 3..=7 {
        let g = Graph::star(n).unwrap();
        let max = all_pairs_agree(&g, |a, b| star_distance(a, b).unwrap())?;
        let expected = 3 * (n - 1) / 2;
        ensure(
            max == expected && star_max_distance(n).unwrap() == expected,
            || format!("K_1,{}: diameter {max}, expected {expected}", n - 1),
        )?;
        let diam = ConfigurationSpace::vertex(&g)
            .diameter()
            .map_err(|e| e.to_string())?;
        ensure(diam == expected, || {
            format!("oracle diameter {diam} for n={n}")
        })?;
        pairs += (1..=n).product::<usize>().pow(2);
    }
    Ok(format!(
        "{pairs} pairs on stars n=3..7 agree with BFS; n=7 diameter 9"
    ))
}

fn q_moves_by_one() -> Outcome {
    let mut checks = 0;
    for n in 2..=6 {
        let space = ConfigurationSpace::vertex(&Graph::star(n).unwrap());
        for s in all_states(&space) {
            let p = Permutation::new(s.clone()).unwrap();
            let q = star_q(&p);
            for leaf in 1..n {
                let mut t = s.clone();
                t.swap(0, leaf);
                let q2 = star_q(&Permutation::new(t).unwrap());
                ensure(q.abs_diff(q2) == 1, || {
                    format!("{s:?} flip (0,{leaf}): q {q} -> {q2}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{checks} single flips for n=2..6 each change q by 1"
    ))
}

fn constructive_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for case in 0..500 {
        let n = rng.gen_range(2..=30);
        let g = Graph::random_connected(n, Graph::default_density(n), rng.gen()).unwrap();
        let mut a: Vec<usize> = (0..n).collect();
        let mut b = a.clone();
        a.shuffle(&mut rng);
        b.shuffle(&mut rng);
        let (from, to) = (vl(&a), vl(&b));
        let seq = spanning_tree_transform(&g, &from, &to).map_err(|e| e.to_string())?;
        let reached = apply_sequence(&g, &from, &seq).map_err(|e| format!("case {case}: {e}"))?;
        ensure(reached == to, || {
            format!("case {case}: sequence misses the target")
        })?;
        let bound = n * (n - 1) / 2;
        ensure(seq.len() <= bound, || {
            format!("case {case}: n={n} length {} > {bound}", seq.len())
        })?;
        if bound > 0 {
            worst = worst.max(seq.len() as f64 / bound as f64);
        }
    }
    Ok(format!(
        "500 cases valid; worst length/bound ratio {worst:.3}"
    ))
}

fn reduction_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("P_3", Graph::path(3).unwrap()),
        ("P_4", Graph::path(4).unwrap()),
        ("K_3", Graph::complete(3).unwrap()),
        ("star-4", Graph::star(4).unwrap()),
    ]
}

fn reduction_soundness() -> Outcome {
    let mut v2e_checks = 0usize;
    let mut v2e_bad = Vec::new();
    let mut e2v_checks = 0usize;
    let mut e2v_bad = Vec::new();

    for (name, g) in reduction_graphs() {
        // vertex -> edge at bound 3t
        let space = ConfigurationSpace::vertex(&g);
        let diam = space.diameter().unwrap();
        let states = all_states(&space);
        for a in &states {
            let from = vl(a);
            let dist = space.distances_from(from.as_permutation()).unwrap();
            let probe = VertexInstance::new(g.clone(), from.clone(), from.clone(), 0).unwrap();
            let e = vertex_to_edge(&probe);
            let espace = ConfigurationSpace::edge(&e.graph);
            let edist = espace.distances_from(e.from.as_permutation()).unwrap();
            for b in &states {
                let to = vl(b);
                let dv = dist.get(to.as_permutation()).unwrap();
                for t in 0..=diam {
                    let inst = VertexInstance::new(g.clone(), from.clone(), to.clone(), t).unwrap();
                    let e = vertex_to_edge(&inst);
                    let de = edist.get(e.to.as_permutation()).unwrap();
                    let (yes_v, yes_e) = (dv <= t, de <= e.t);
                    if yes_v != yes_e {
                        v2e_bad.push(format!(
                            "{name} {a:?}->{b:?} t={t}: vertex d={dv} ({}), edge d={de} vs bound {} ({})",
                            answer(yes_v),
                            e.t,
                            answer(yes_e)
                        ));
                    }
                    v2e_checks += 1;
                }
            }
        }

        // edge -> vertex at bound t
        let espace = ConfigurationSpace::edge(&g);
        let ediam = espace.diameter().unwrap();
        let estates = all_states(&espace);
        for a in &estates {
            let from = EdgeLabeling::new(a.clone()).unwrap();
            let edist = espace.distances_from(from.as_permutation()).unwrap();
            let probe = EdgeInstance::new(g.clone(), from.clone(), from.clone(), 0).unwrap();
            let v = edge_to_vertex(&probe);
            let vdist = ConfigurationSpace::vertex(&v.graph)
                .distances_from(v.from.as_permutation())
                .unwrap();
            for b in &estates {
                let to = EdgeLabeling::new(b.clone()).unwrap();
                let de = edist.get(to.as_permutation()).unwrap();
                for t in 0..=ediam {
                    let inst = EdgeInstance::new(g.clone(), from.clone(), to.clone(), t).unwrap();
                    let v = edge_to_vertex(&inst);
                    let dv = vdist.get(v.to.as_permutation()).unwrap();
                    if (de <= t) != (dv <= v.t) {
                        e2v_bad.push(format!(
                            "{name} edges {a:?}->{b:?} t={t}: edge d={de}, vertex d={dv}"
                        ));
                    }
                    e2v_checks += 1;
                }
            }
        }
    }
    let summary = format!(
        "vertex->edge: {}/{v2e_checks} answers differ; edge->vertex: {}/{e2v_checks} differ",
        v2e_bad.len(),
        e2v_bad.len()
    );
    if v2e_bad.is_empty() && e2v_bad.is_empty() {
        Ok(summary)
    } else {
        let first = v2e_bad.first().or(e2v_bad.first()).unwrap();
        Err(format!("{summary}; first: {first}"))
    }
}

fn answer(yes: bool) -> &'static str {
    if yes {
        "yes"
    } else {
        "no"
    }
}

/// Connected graphs on four vertices, as edge subsets of `K_4`.
fn connected_graphs_on_4() -> Vec<Graph> {
    let k4: Vec<(usize, usize)> = Graph::complete(4).unwrap().edges().to_vec();
    (0u32..1 << k4.len())
        .filter_map(|mask| {
            let edges = k4
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = Graph::new(4, edges).unwrap();
            g.is_connected().then_some(g)
        })
        .collect()
}

fn privileged_characterization() -> Outcome {
    let graphs = connected_graphs_on_4();
    let (mut path_yes, mut path_no, mut other_yes, mut checked) = (0, 0, 0, 0);
    for g in &graphs {
        for a in 0..4 {
            for b in a + 1..4 {
                let privileged: BTreeSet<usize> = (0..4).filter(|&x| x != a && x != b).collect();
                let space = ConfigurationSpace::vertex(g)
                    .with_privileged(privileged.iter().copied())
                    .unwrap();
                let states = all_states(&space);
                for s in &states {
                    let from = vl(s);
                    let reach = space.distances_from(from.as_permutation()).unwrap();
                    for t in &states {
                        let to = vl(t);
                        let bfs = reach.get(to.as_permutation()).is_some();
                        let inst = PrivilegedInstance::vertex(
                            g.clone(),
                            from.clone(),
                            to.clone(),
                            privileged.iter().copied(),
                            None,
                        )
                        .unwrap();
                        // capacity 0 keeps the oracle out of the answer
                        let verdict = resolve(&inst, 0).map_err(|e| {
                            format!(
                                "edges {:?}, {s:?}->{t:?}: no structural answer ({e})",
                                g.edges()
                            )
                        })?;
                        ensure(verdict.answer == bfs, || {
                            format!(
                                "edges {:?}, non-privileged {{{a},{b}}}, {s:?}->{t:?}: {} via {:?}, BFS {}",
                                g.edges(),
                                answer(verdict.answer),
                                verdict.method,
                                answer(bfs)
                            )
                        })?;
                        if let Some(w) = &verdict.witness {
                            let end = w.replay(&inst).map_err(|e| e.to_string())?;
                            ensure(end == inst.to, || "witness misses the target".into())?;
                        }
                        match (g.is_path(), bfs) {
                            (true, true) => path_yes += 1,
                            (true, false) => path_no += 1,
                            (false, true) => other_yes += 1,
                            (false, false) => {
                                return Err(format!(
                                    "non-path {:?} has an unreachable pair",
                                    g.edges()
                                ))
                            }
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    ensure(path_yes > 0 && path_no > 0, || {
        "paths did not give both answers".into()
    })?;
    Ok(format!(
        "{} graphs, {checked} instances; paths {path_yes} yes / {path_no} no; non-paths {other_yes} yes, 0 no",
        graphs.len()
    ))
}

fn puzzle_halving() -> Outcome {
    let solved: Vec<usize> = (0..4).collect();
    let inst = relabel_core::privileged::puzzle_instance(2, &solved, &solved, 0).unwrap();
    let comp = inst.space().unwrap().component(&inst.from, 0).unwrap();
    ensure(comp.size == 12 && comp.total == 24, || {
        format!("component {} of {}", comp.size, comp.total)
    })?;
    Ok("12 of 24 configurations reachable".into())
}

fn sw_cost() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a5a);
    let trials = 2000;
    for trial in 0..trials {
        let n = rng.gen_range(2..=12);
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let tree = Graph::new(n, edges).unwrap();
        let mut labels: Vec<usize> = (0..n).collect();
        labels.shuffle(&mut rng);
        let l = vl(&labels);
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        // at most one non-privileged label, anywhere (possibly on the path)
        let odd = rng.gen_range(0..=n);
        let privileged: BTreeSet<usize> = (0..n).filter(|&x| x != odd).collect();
        let seq =
            sw_swap(&tree, u, v, &l, &privileged).map_err(|e| format!("trial {trial}: {e}"))?;
        let d = tree.bfs_distances(u)[v].unwrap();
        ensure(seq.len() == 2 * d - 1, || {
            format!("trial {trial}: dist {d}, length {}", seq.len())
        })?;
        for &VertexFlip(a, b) in seq.iter() {
            ensure(tree.has_edge(a, b), || {
                format!("trial {trial}: ({a},{b}) is not an edge")
            })?;
        }
        let mut expected = labels.clone();
        expected.swap(u, v);
        let got = apply_sequence(&tree, &l, &seq).unwrap();
        ensure(got.labels() == expected, || {
            format!("trial {trial}: not a pure transposition")
        })?;
        let inst = PrivilegedInstance::vertex(tree, l.clone(), got, privileged, None).unwrap();
        relabel_core::privileged::apply_restricted(&inst, &seq)
            .map_err(|e| format!("trial {trial}: {e}"))?;
    }
    Ok(format!(
        "{trials} random swaps on trees n<=12: length 2d-1, pure transposition, restricted-legal"
    ))
}

fn star_greedy() -> Outcome {
    let mut total = 0;
    for n in 2..=7 {
        let g = Graph::star(n).unwrap();
        let id = VertexLabeling::identity(n);
        for s in all_states(&ConfigurationSpace::vertex(&g)) {
            let from = vl(&s);
            let seq = star_flip_sequence(&from, &id).unwrap();
            let q = star_q(from.as_permutation());
            ensure(seq.len() == q, || {
                format!("{s:?}: greedy {} flips, q = {q}", seq.len())
            })?;
            ensure(apply_sequence(&g, &from, &seq).unwrap() == id, || {
                format!("{s:?}: greedy sequence misses the identity")
            })?;
            total += 1;
        }
    }
    Ok(format!(
        "{total} labelings for n=2..7: greedy length equals q"
    ))
}
