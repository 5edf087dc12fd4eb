//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL
//! line with its runtime and budget; the process fails if any does.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use clusterskein_core::cluster::{explore, sweep_sequences};
use clusterskein_core::generators::{
    enumerate_generators, handle_sequences, GeneratorDescriptor, HandleDecomposition, Options,
};
use clusterskein_core::laurent::parse;
use clusterskein_core::skein::{check_flip_compatibility, polygon_injectivity, vertex_expansion, FlipKind};
use clusterskein_core::surface::{builtin, Builtin};
use clusterskein_core::{LaurentPoly, Seed, TaggedTriangulation, Triangulation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn torus() -> Triangulation {
    builtin(Builtin::PuncturedTorus).unwrap()
}

fn disk(n: usize) -> Triangulation {
    builtin(Builtin::Disk(n)).unwrap()
}

fn markov_example() -> Outcome {
    let b = torus().exchange_matrix();
    let mutated = b.mutate(2).map_err(|e| e.to_string())?;
    ensure!(b.to_string() == "[[0,2,-2],[-2,0,2],[2,-2,0]]", "B = {b}");
    ensure!(mutated.to_string() == "[[0,-2,2],[2,0,-2],[-2,2,0]]", "B' = {mutated}");
    let flipped = torus().flip(2).map_err(|e| e.to_string())?.exchange_matrix();
    ensure!(flipped == mutated, "flipped triangulation gives {flipped}");
    Ok(format!("B = {b}, mu_3(B) = {mutated}"))
}

fn involutions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let roots: Vec<Seed> = (4..=8)
        .map(|n| Seed::initial(&disk(n)))
        .chain([Seed::initial(&torus())])
        .collect();
    for trial in 0..1000 {
        let root = &roots[rng.gen_range(0..roots.len())];
        let ks: Vec<usize> = root.mutable_indices().collect();
        let walk: Vec<usize> = (0..rng.gen_range(0..=6))
            .map(|_| ks[rng.gen_range(0..ks.len())])
            .collect();
        let s = root.mutate_sequence(&walk).map_err(|e| e.to_string())?;
        let k = ks[rng.gen_range(0..ks.len())];
        let back = s.mutate(k).and_then(|m| m.mutate(k)).map_err(|e| e.to_string())?;
        ensure!(
            back.vars() == s.vars(),
            "trial {trial}: variables differ after mu_{k}^2 along {walk:?}"
        );
        ensure!(
            back.matrix() == s.matrix(),
            "trial {trial}: matrix differs after mu_{k}^2 along {walk:?}"
        );
    }
    Ok("1000 random mutations undone exactly".into())
}

fn laurent_phenomenon() -> Outcome {
    let mut notes = Vec::new();
    for (name, seed, len) in [
        ("punctured torus", Seed::initial(&torus()), 6),
        ("disk(6)", Seed::initial(&disk(6)), 8),
    ] {
        let r = sweep_sequences(&seed, len, true);
        if let Some((path, e)) = r.failure {
            return Err(format!("{name}: {path:?} fails with {e}"));
        }
        notes.push(format!("{name}: {} sequences of length <= {len}", r.sequences));
    }
    Ok(notes.join("; "))
}

/// Sets of `n - 3` pairwise non-crossing diagonals of a convex `n`-gon.
fn brute_force_triangulations(n: usize) -> usize {
    let diagonals: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == n - 1))
        .collect();
    let crosses =
        |(a, b): (usize, usize), (c, d): (usize, usize)| (a < c && c < b && b < d) || (c < a && a < d && d < b);
    fn choose(
        start: usize,
        left: usize,
        chosen: &mut Vec<(usize, usize)>,
        diagonals: &[(usize, usize)],
        crosses: &dyn Fn((usize, usize), (usize, usize)) -> bool,
    ) -> usize {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for i in start..diagonals.len() {
            if chosen.iter().all(|&c| !crosses(c, diagonals[i])) {
                chosen.push(diagonals[i]);
                total += choose(i + 1, left - 1, chosen, diagonals, crosses);
                chosen.pop();
            }
        }
        total
    }
    choose(0, n - 3, &mut Vec::new(), &diagonals, &crosses)
}

fn saturation() -> Outcome {
    let mut notes = Vec::new();
    for n in 4..=8 {
        let expected = brute_force_triangulations(n);
        let g = explore(&Seed::initial(&disk(n)), 64, 10_000);
        ensure!(g.is_saturated() && !g.is_truncated(), "disk({n}) did not saturate");
        ensure!(g.len() == expected, "disk({n}): {} seeds, oracle {expected}", g.len());
        let vars = g.cluster_variables().len();
        ensure!(vars == n * (n - 3) / 2, "disk({n}): {vars} cluster variables");
        notes.push(format!("{}", g.len()));
    }
    Ok(format!("seeds {} for n = 4..8", notes.join(", ")))
}

fn flip_orbit(root: Triangulation, depth: usize) -> Vec<Triangulation> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(root, 0)]);
    while let Some((t, d)) = queue.pop_front() {
        if !seen.insert(t.clone()) {
            continue;
        }
        if d < depth {
            for k in t.interior_edges().collect::<Vec<_>>() {
                queue.push_back((t.flip(k).unwrap(), d + 1));
            }
        }
        out.push(t);
    }
    out
}

fn path_independence() -> Outcome {
    let mut checked = 0;
    let orbits = [(disk(4), 64), (disk(5), 64), (disk(6), 64), (torus(), 5)];
    for (root, depth) in orbits {
        for t in flip_orbit(root, depth) {
            for k in t.interior_edges() {
                let via_flip = t.flip(k).map_err(|e| e.to_string())?.exchange_matrix();
                let via_mutation = t.exchange_matrix().mutate(k).map_err(|e| e.to_string())?;
                ensure!(via_flip == via_mutation, "{:?} flip {k}", t.named_triangles());
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} flips agree with matrix mutation"))
}

fn ptolemy() -> Outcome {
    let t = disk(4);
    let s = Seed::initial(&t);
    let table = s.table().unwrap().clone();
    let k = t.index_of("x5").unwrap();
    let m = s.mutate(k).map_err(|e| e.to_string())?;
    let product = s.var(k) * m.var(k);
    let expected = parse(&table, "x1*x3 + x2*x4").unwrap();
    ensure!(product == expected, "x x' = {product}");
    let c = check_flip_compatibility(&TaggedTriangulation::from_ideal(t), k).map_err(|e| e.to_string())?;
    ensure!(
        c.kind == FlipKind::Quadrilateral && c.passed() && c.lhs == expected,
        "surface side: {c:?}"
    );
    Ok(format!("x5 * x5' = {product}"))
}

fn rho_compatibility() -> Outcome {
    let t = builtin(Builtin::PuncturedDigon).unwrap();
    let table = t.var_table();
    let p = t.vertex_by_name("v2").unwrap();
    let v = vertex_expansion(&t, p).map_err(|e| e.to_string())?;
    let relation = &(&v * &parse(&table, "x*y").unwrap()) - &parse(&table, "x2 + x3").unwrap();
    ensure!(relation.is_zero(), "v x y - (x2 + x3) = {relation}");

    let tt = TaggedTriangulation::from_ideal(t.clone());
    let x = t.index_of("x").unwrap();
    let c = check_flip_compatibility(&tt, x).map_err(|e| e.to_string())?;
    let target = parse(&table, "x2 + x3").unwrap();
    ensure!(c.kind == FlipKind::PuncturedDigon, "kind {:?}", c.kind);
    ensure!(
        c.lhs == target && c.rhs == target,
        "rho(x) rho(x') = {}, rho(x2 + x3) = {}",
        c.lhs,
        c.rhs
    );
    ensure!(
        c.consistent(),
        "rho(x') = {} but the mutated variable maps to {}",
        c.flipped,
        c.mutated
    );
    let flipped = tt.tagged_flip(x).map_err(|e| e.to_string())?;
    let notched: Vec<_> = flipped.arcs().into_iter().filter(|a| !a.is_plain()).collect();
    ensure!(
        notched.len() == 1 && notched[0].slot == x,
        "x' should be the only notched arc"
    );
    let back = check_flip_compatibility(&flipped, x).map_err(|e| e.to_string())?;
    ensure!(back.passed(), "flipping back: {back:?}");

    let mut distinct = Vec::new();
    for n in [5, 6] {
        let r = polygon_injectivity(&disk(n), 10_000).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "disk({n}): {:?} {:?}", r.inconsistent, r.collisions);
        let vars: BTreeSet<LaurentPoly> = explore(&Seed::initial(&disk(n)), 64, 10_000).cluster_variables();
        ensure!(
            vars.len() == r.arcs.len(),
            "disk({n}): {} variables for {} arcs",
            vars.len(),
            r.arcs.len()
        );
        distinct.push(format!("disk({n}) {} arcs", r.arcs.len()));
    }
    Ok(format!(
        "rho(x) rho(x') = {}; injective on {}",
        c.lhs,
        distinct.join(", ")
    ))
}

fn equivalent_loops(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    (0..n).any(|r| (0..n).all(|i| a[(i + r) % n] == b[i]) || (0..n).all(|i| a[(n - 1 - i + r) % n] == b[i]))
}

fn generators() -> Outcome {
    for h in 0..=4 {
        // Quadratic oracle: a sequence starts a new class unless an earlier one is equivalent.
        let all: Vec<Vec<usize>> = handle_sequences(h).into_iter().filter(|s| !s.is_empty()).collect();
        let classes = (0..all.len())
            .filter(|&i| (0..i).all(|j| !equivalent_loops(&all[i], &all[j])))
            .count();
        for (m, n) in [(0, 0), (2, 0), (0, 3), (1, 2)] {
            let hd = HandleDecomposition {
                handles: h,
                boundary_points: m,
                punctures: n,
                genus: h / 2,
            };
            for opts in [
                Options::default(),
                Options {
                    bullock: true,
                    decorated: true,
                    ..Options::default()
                },
            ] {
                let out = enumerate_generators(&hd, &opts).map_err(|e| e.to_string())?;
                for d in &out {
                    ensure!(d.traverses_once() && d.handles().iter().all(|&x| x < h), "h = {h}: {d}");
                }
                let loops: Vec<&[usize]> = out
                    .iter()
                    .filter_map(|d| match d {
                        GeneratorDescriptor::Loop(s) => Some(&s[..]),
                        _ => None,
                    })
                    .collect();
                for i in 0..loops.len() {
                    for j in 0..i {
                        ensure!(
                            !equivalent_loops(loops[i], loops[j]),
                            "h = {h}: {:?} ~ {:?}",
                            loops[i],
                            loops[j]
                        );
                    }
                }
                if !opts.bullock {
                    ensure!(
                        loops.len() == classes,
                        "h = {h}: {} loops, oracle {classes}",
                        loops.len()
                    );
                }
            }
        }
    }
    let two = enumerate_generators(
        &HandleDecomposition {
            handles: 2,
            boundary_points: 0,
            punctures: 0,
            genus: 1,
        },
        &Options::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure!(two.len() == 3, "h = 2 gives {} loops", two.len());
    Ok("loop classes match the oracle for h <= 4; h = 2 gives 3 loops".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("exchange matrix example", markov_example, Duration::from_secs(1)),
        ("mutation involution", involutions, Duration::from_secs(30)),
        ("Laurent phenomenon", laurent_phenomenon, Duration::from_secs(120)),
        ("exchange graph saturation", saturation, Duration::from_secs(60)),
        ("path independence", path_independence, Duration::from_secs(30)),
        ("Ptolemy identity", ptolemy, Duration::from_secs(1)),
        ("rho compatibility", rho_compatibility, Duration::from_secs(10)),
        ("generator enumeration", generators, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > budget => ("FAIL", format!("over budget of {budget:?}")),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} [{status}] {name} ({elapsed:.2?}, budget {budget:?}): {detail}",
            i + 1
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
