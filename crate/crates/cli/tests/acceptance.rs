//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::fs;
use std::process::Command;
use std::time::Instant;

use edgeslide::format::{write_bijection, write_elist};
use edgeslide::oracle::random_connected;
use edgeslide::{
    almost_regular_target, enumerate_connected, interchange, minimal_energy_oracle, move_edge,
    pendant_subdivide_equivalence, reachability_census, regularize, replay, replay_inspect,
    transform, transform_euler, CheckLevel, Edge, Graph, MoveScript, VertexBijection,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Gauss-Bonnet bookkeeping shared by the criteria whose scripts it covers.
#[derive(Default)]
struct Curvature {
    states: Cell<u64>,
    violations: Cell<u64>,
}

impl Curvature {
    /// Full replay, recomputing the curvature sum from scratch after every move.
    fn replay(&self, g: &Graph, s: &MoveScript) -> Result<Graph, String> {
        replay_inspect(g, s, CheckLevel::Full, |_, h| {
            let curvature: i64 = (0..h.n()).map(|v| 2 - h.degree(v) as i64).sum();
            let chi = h.n() as i64 - h.edge_count() as i64;
            self.states.set(self.states.get() + 1);
            if curvature != 2 * chi {
                self.violations.set(self.violations.get() + 1);
            }
        })
        .map_err(|e| e.to_string())
    }
}

fn random_bijection(n: usize, rng: &mut impl Rng) -> VertexBijection {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    VertexBijection::new(v).unwrap()
}

fn edge_range(n: usize) -> std::ops::RangeInclusive<usize> {
    n.saturating_sub(1)..=n * (n - 1) / 2
}

fn all_connected(n: usize) -> Vec<Graph> {
    edge_range(n)
        .flat_map(|e| enumerate_connected(n, e).unwrap())
        .collect()
}

fn criterion_1(cv: &Curvature) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut classes: Vec<(usize, usize)> = (1..=4)
        .flat_map(|n| edge_range(n).map(move |e| (n, e)))
        .collect();
    classes.extend([(5, 4), (5, 5), (5, 6)]);
    let mut plans = 0u64;
    for &(n, e) in &classes {
        let graphs = enumerate_connected(n, e).unwrap();
        for a in &graphs {
            for b in &graphs {
                let mut psis = vec![VertexBijection::identity(n)];
                psis.extend((0..3).map(|_| random_bijection(n, &mut rng)));
                for psi in &psis {
                    let plan =
                        transform(a, b, psi).map_err(|err| format!("{a:?} -> {b:?}: {err}"))?;
                    let end = cv.replay(a, &plan.script)?;
                    if !end.is_isomorphic_under(b, psi).unwrap() {
                        return Err(format!("{a:?} -> {b:?} under {psi:?} misses the target"));
                    }
                    plans += 1;
                }
            }
        }
        let row = reachability_census(n, e).map_err(|err| err.to_string())?;
        if row.classes != 1 {
            return Err(format!(
                "census n={n} e={e} reports {} classes",
                row.classes
            ));
        }
    }
    Ok(format!(
        "{plans} plans verified over {} (n, e) classes, each a single slide class",
        classes.len()
    ))
}

fn criterion_2(cv: &Curvature) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let target = almost_regular_target(9, 16).unwrap();
    let want = vec![4, 4, 4, 4, 4, 3, 3, 3, 3];
    let mut steps = 0;
    for _ in 0..100 {
        let g = random_connected(9, 16, &mut rng).unwrap();
        let reg = regularize(&g).map_err(|e| e.to_string())?;
        // Recompute energies at step boundaries from an independent replay.
        let mut boundaries = BTreeSet::new();
        let mut at = 0;
        for s in &reg.steps {
            at += s.slides;
            boundaries.insert(at - 1);
        }
        let mut energies = vec![g.energy()];
        let end = replay_inspect(&g, &reg.script, CheckLevel::Full, |i, h| {
            if boundaries.contains(&i) {
                energies.push(h.degrees().iter().map(|&d| (d * d) as u64).sum());
            }
        })
        .map_err(|e| e.to_string())?;
        cv.replay(&g, &reg.script)?;
        for (k, s) in reg.steps.iter().enumerate() {
            let drop = energies[k]
                .checked_sub(energies[k + 1])
                .ok_or("energy rose")?;
            if drop == 0 || drop != 2 * (s.high_degree - s.low_degree - 1) as u64 {
                return Err(format!(
                    "step {k} dropped energy by {drop} for degrees {} and {}",
                    s.high_degree, s.low_degree
                ));
            }
        }
        let mut d = end.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        if d != want || end.energy() != 116 || target.energy() != 116 {
            return Err(format!("ended at degrees {d:?} energy {}", end.energy()));
        }
        steps += reg.steps.len();
    }
    Ok(format!(
        "100 graphs reached {{4^5, 3^4}} at energy 116 in {steps} exact steps"
    ))
}

fn criterion_3() -> Check {
    let mut cases = 0;
    for n in 1..=6 {
        for e in edge_range(n) {
            let t = almost_regular_target(n, e).unwrap();
            let oracle = minimal_energy_oracle(n, e).map_err(|e| e.to_string())?;
            if oracle != BTreeSet::from([t.multiset()]) {
                return Err(format!(
                    "n={n} e={e}: oracle {oracle:?} vs {:?}",
                    t.multiset()
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, e) cases agree"))
}

fn criterion_4(cv: &Curvature) -> Check {
    let mut moved = 0;
    let mut refused = 0;
    for n in 2..=5 {
        for g in all_connected(n) {
            let edges: BTreeSet<Edge> = g.edges().collect();
            for &uv in &edges {
                for x in 0..n {
                    for y in x + 1..n {
                        if g.has_edge(x, y) {
                            continue;
                        }
                        let mut want = edges.clone();
                        want.remove(&uv);
                        want.insert((x, y));
                        let legal = Graph::from_edges(n, want.iter().copied())
                            .unwrap()
                            .is_connected();
                        match move_edge(&g, uv, (x, y)) {
                            Ok(s) if legal => {
                                let h = cv.replay(&g, &s)?;
                                if h.edges().collect::<BTreeSet<_>>() != want {
                                    return Err(format!(
                                        "{g:?}: {uv:?} -> {:?} wrong result",
                                        (x, y)
                                    ));
                                }
                                moved += 1;
                            }
                            Ok(_) => {
                                return Err(format!("{g:?}: accepted disconnecting move {uv:?}"))
                            }
                            Err(err) if legal => {
                                return Err(format!("{g:?}: {uv:?} -> {:?}: {err}", (x, y)))
                            }
                            Err(_) => refused += 1,
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{moved} legal relocations exact, {refused} disconnecting ones refused"
    ))
}

fn criterion_5(cv: &Curvature) -> Check {
    let mut pairs = 0;
    for n in 2..=5 {
        for g in all_connected(n) {
            for a in 0..n {
                for b in a + 1..n {
                    let s = interchange(&g, a, b).map_err(|e| e.to_string())?;
                    let h = cv.replay(&g, &s)?;
                    let swap = |v| {
                        if v == a {
                            b
                        } else if v == b {
                            a
                        } else {
                            v
                        }
                    };
                    let direct =
                        Graph::from_edges(n, g.edges().map(|(u, v)| (swap(u), swap(v)))).unwrap();
                    if h != direct {
                        return Err(format!("{g:?}: interchange {a} {b} gives {h:?}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "{pairs} vertex pairs match the direct neighbourhood swap"
    ))
}

fn criterion_6(cv: &Curvature) -> Check {
    match (cv.states.get(), cv.violations.get()) {
        (0, _) => Err("no states were checked".into()),
        (states, 0) => Ok(format!(
            "curvature sum equals 2 chi in all {states} intermediate states"
        )),
        (states, bad) => Err(format!("{bad} of {states} states violate the identity")),
    }
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut moves = 0;
    for _ in 0..50 {
        let (n1, n2) = loop {
            let a = rng.random_range(3..=9);
            let b = rng.random_range(3..=9);
            if a != b {
                break (a.min(b), a.max(b));
            }
        };
        // chi ranges over [n - n(n-1)/2, 1] for each order.
        let lo = [n1, n2]
            .iter()
            .map(|&n| n as i64 - (n * (n - 1) / 2) as i64)
            .max()
            .unwrap();
        let chi = rng.random_range(lo..=1);
        let small = random_connected(n1, (n1 as i64 - chi) as usize, &mut rng).unwrap();
        let big = random_connected(n2, (n2 as i64 - chi) as usize, &mut rng).unwrap();
        for (from, to) in [(&small, &big), (&big, &small)] {
            let (script, psi) = transform_euler(from, to).map_err(|e| e.to_string())?;
            let mut drift = false;
            let end = replay_inspect(from, &script, CheckLevel::Full, |_, h| {
                drift |= h.n() as i64 - h.edge_count() as i64 != chi;
            })
            .map_err(|e| e.to_string())?;
            if drift || !end.is_isomorphic_under(to, &psi).unwrap() {
                return Err(format!("chi {chi}: {from:?} -> {to:?} failed"));
            }
            moves += script.len();
        }
    }
    Ok(format!(
        "50 pairs verified both ways, chi fixed across {moves} moves"
    ))
}

fn criterion_8() -> Check {
    let mut checked = 0;
    for n in 2..=6 {
        for g in all_connected(n) {
            for (u, v) in g.edges() {
                for edge in [(u, v), (v, u)] {
                    let (a, b) =
                        pendant_subdivide_equivalence(&g, edge).map_err(|e| e.to_string())?;
                    let ga = replay(&g, &a, CheckLevel::Full).map_err(|e| e.to_string())?;
                    let gb = replay(&g, &b, CheckLevel::Full).map_err(|e| e.to_string())?;
                    if ga != gb {
                        return Err(format!("{g:?} edge {edge:?}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} oriented edges give identical graphs"))
}

fn criterion_9() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let write = |name: &str, text: String| fs::write(d.join(name), text).unwrap();
    write(
        "a.elist",
        write_elist(&random_connected(8, 10, &mut rng).unwrap()),
    );
    write(
        "b.elist",
        write_elist(&random_connected(8, 10, &mut rng).unwrap()),
    );
    write(
        "c.elist",
        write_elist(&random_connected(5, 7, &mut rng).unwrap()),
    );
    write("m.txt", write_bijection(&random_bijection(8, &mut rng)));

    let bin = env!("CARGO_BIN_EXE_edgeslide");
    let run = |args: &[&str], out: Option<&str>| -> Result<Vec<u8>, String> {
        let o = Command::new(bin)
            .current_dir(d)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        if !o.status.success() {
            return Err(format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)));
        }
        Ok(match out {
            Some(f) => fs::read(d.join(f)).map_err(|e| e.to_string())?,
            None => o.stdout,
        })
    };
    let invocations: Vec<(Vec<&str>, Option<&str>)> = vec![
        (
            vec![
                "transform",
                "a.elist",
                "b.elist",
                "--bijection",
                "m.txt",
                "-o",
                "t.moves",
            ],
            Some("t.moves"),
        ),
        (vec!["transform", "a.elist", "b.elist"], None),
        (
            vec!["regularize", "a.elist", "-o", "r.moves"],
            Some("r.moves"),
        ),
        (
            vec!["euler-transform", "a.elist", "c.elist", "-o", "e.moves"],
            Some("e.moves"),
        ),
        (
            vec!["euler-transform", "c.elist", "a.elist", "-o", "f.moves"],
            Some("f.moves"),
        ),
        (vec!["replay", "a.elist", "t.moves", "--full"], None),
        (
            vec![
                "verify",
                "a.elist",
                "t.moves",
                "--expect",
                "b.elist",
                "--bijection",
                "m.txt",
            ],
            None,
        ),
        (vec!["oracle", "--max-n", "4"], None),
        (vec!["stats", "a.elist"], None),
    ];
    for (args, out) in &invocations {
        let first = run(args, *out)?;
        let second = run(args, *out)?;
        if first != second || first.is_empty() {
            return Err(format!("{args:?} output differs between runs"));
        }
    }
    Ok(format!(
        "{} subcommand invocations byte-identical across runs",
        invocations.len()
    ))
}

fn main() {
    let started = Instant::now();
    let cv = Curvature::default();
    let criteria: [(&str, &dyn Fn() -> Check); 9] = [
        ("exhaustive slide-equivalence", &|| criterion_1(&cv)),
        ("regularization of n=9, e=16", &|| criterion_2(&cv)),
        ("minimal energy oracle", &criterion_3),
        ("move_edge exactness", &|| criterion_4(&cv)),
        ("interchange contract", &|| criterion_5(&cv)),
        ("curvature identity", &|| criterion_6(&cv)),
        ("euler-preserving transforms", &criterion_7),
        ("pendant/subdivide equivalence", &criterion_8),
        ("cli determinism", &criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match check() {
            Ok(msg) => ("PASS", msg),
            Err(msg) => {
                failed += 1;
                ("FAIL", msg)
            }
        };
        println!(
            "{tag} criterion {}: {name}: {detail} ({:.1}s)",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of 9 criteria passed in {:.1}s",
        9 - failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
