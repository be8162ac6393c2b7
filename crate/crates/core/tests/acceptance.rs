//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p clusterweyl --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clusterweyl::companion::{equal_up_to_sign_changes, reachability_check};
use clusterweyl::corpus::{
    case_rng, find_acyclic_ancestor, random_acyclic_seed, random_sequence, random_signs,
    reachable_within, type_a, type_b, SeedConfig,
};
use clusterweyl::relations::{
    affine_dn_check, affine_dn_setup, basis_coefficients, check_weight_ge4_walk, cycle_relation,
    group_order, normalize_signs, pair_order, pair_relation, path_system_relation,
    two_infinity_order, verify_involutions, verify_relation, GroupOrder, Order, PathPolicy,
    PathSystem, RelationError, VerificationStatus, VerifyOptions, WalkOptions,
};
use clusterweyl::roots::companion_basis_for;
use clusterweyl::{
    Companion, CompanionTriple, Diagram, EpsPolicy, MutationSequence, RootVec, Sign, SkewMatrix,
};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

struct Outcome {
    passed: bool,
    detail: String,
    /// Part of the criterion that cannot be met, with the reason.
    unattainable: Option<String>,
}

impl Outcome {
    fn check(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
            unattainable: None,
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const SEED: u64 = 20240611;

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "mutation is an involution and commutes with taking diagrams (1000 seeds)",
            budget: Duration::from_secs(10),
            run: involution_and_commutation,
        },
        Criterion {
            id: 2,
            name: "A3 worked ε-mutation at vertex 2 with ε = -1",
            budget: Duration::from_secs(10),
            run: a3_worked_chain,
        },
        Criterion {
            id: 3,
            name: "involution, pair and cycle relations across the A3 and B3 classes (depth 6)",
            budget: Duration::from_secs(60),
            run: finite_class_relations,
        },
        Criterion {
            id: 4,
            name: "companion-basis reflections generate groups of order 6, 24, 8, 48",
            budget: Duration::from_secs(60),
            run: generation,
        },
        Criterion {
            id: 5,
            name: "single-path systems match cycle relations; two-path example has order 3",
            budget: Duration::from_secs(60),
            run: path_systems,
        },
        Criterion {
            id: 6,
            name: "basis coefficients equal increasing-path sums (200 random path systems)",
            budget: Duration::from_secs(60),
            run: coefficient_claim,
        },
        Criterion {
            id: 7,
            name: "weight ≥ 4 seeds keep every edge weight ≥ 4 on 10^4-step walks",
            budget: Duration::from_secs(60),
            run: weight_ge4_walks,
        },
        Criterion {
            id: 8,
            name: "orders of real-root pairs on weight ≥ 4 lattices are 2 or ∞ (500 pairs)",
            budget: Duration::from_secs(60),
            run: two_or_infinity,
        },
        Criterion {
            id: 9,
            name: "D̃n relation with (γ, δ) = 0 for n = 4..8",
            budget: Duration::from_secs(60),
            run: affine_dn,
        },
        Criterion {
            id: 10,
            name: "ε-mutated companions are reachable up to sign changes (100 cases)",
            budget: Duration::from_secs(60),
            run: reachability,
        },
    ]
}

fn main() -> ExitCode {
    let mut hard_failures = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= c.budget;
        let passed = outcome.passed && in_budget;
        println!(
            "{} [{:>2}] {} ({:.2?}; {})",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed,
            outcome.detail
        );
        if !in_budget {
            println!("       over time budget of {:?}", c.budget);
        }
        match (&outcome.unattainable, passed) {
            (Some(reason), false) => println!("       unattainable: {reason}"),
            (None, false) => hard_failures += 1,
            _ => {}
        }
    }
    if hard_failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{hard_failures} criteria failed");
        ExitCode::FAILURE
    }
}

fn eps(s: i64) -> Sign {
    if s < 0 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

fn involution_and_commutation() -> Outcome {
    let config = SeedConfig::default();
    let failures: Vec<String> = (0..1000u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = case_rng(SEED, i);
            let seed = random_acyclic_seed(&mut rng, &config);
            let len = rng.gen_range(0..=4);
            // walk away from the acyclic seed so cyclic matrices are covered too
            let walk = random_sequence(&mut rng, seed.n(), len);
            let m = seed.mutate_along(&walk).ok()?;
            for k in 0..m.n() {
                let Ok(mk) = m.mutate(k) else { continue };
                let back = mk.mutate(k).ok()?;
                let via_matrix = Diagram::of(&mk);
                let via_diagram = Diagram::of(&m).mutate(k).ok()?;
                if back != m || via_matrix != via_diagram || mk.symmetrizer() != m.symmetrizer() {
                    return Some(format!("case {i} vertex {}", k + 1));
                }
            }
            None
        })
        .collect();
    Outcome::check(failures.is_empty(), format!("{} failures", failures.len()))
}

fn a3_worked_chain() -> Outcome {
    let t = companion_basis_for(
        &type_a(3),
        &MutationSequence::new(vec![1]),
        &EpsPolicy::Fixed(Sign::Minus),
    );
    let Ok(t) = t else {
        return Outcome::check(false, "mutation failed");
    };
    let companion_ok = t.companion.rows() == [vec![2, -1, -1], vec![-1, 2, 1], vec![-1, 1, 2]];
    let basis_ok = t.basis.vectors()
        == [
            RootVec(vec![1, 1, 0]),
            RootVec(vec![0, -1, 0]),
            RootVec(vec![0, 0, 1]),
        ];
    let admissible = t.companion.is_admissible();
    Outcome::check(
        companion_ok && basis_ok && admissible,
        format!("companion {companion_ok}, basis {basis_ok}, admissible {admissible}"),
    )
}

/// Verifies every involution, pair and cycle relation of one triple.
fn verify_all(t: &CompanionTriple) -> Result<usize, String> {
    verify_involutions(t).map_err(|e| e.to_string())?;
    let g = t.companion.diagram();
    let mut count = t.n();
    for i in 0..t.n() {
        for j in (i + 1)..t.n() {
            let r = pair_relation(&g, i, j).map_err(|e| e.to_string())?;
            verify_relation(&r, t, VerifyOptions::default()).map_err(|e| e.to_string())?;
            let (x, m) = pair_order(&t.lattice, t.basis.vector(i), t.basis.vector(j))
                .map_err(|e| e.to_string())?;
            if x != r.x || m != r.m {
                return Err(format!("pair {} {}: lattice x = {x}", i + 1, j + 1));
            }
            count += 1;
        }
    }
    for cycle in g.enumerate_cycles().iter().filter(|c| c.oriented) {
        for &v in &cycle.vertices {
            let r = cycle_relation(&g, &cycle.vertices, v).map_err(|e| e.to_string())?;
            if !matches!(r.m, Order::Finite(2 | 3 | 4 | 6)) {
                return Err(format!("cycle relation with m = {}", r.m));
            }
            let v = verify_relation(&r, t, VerifyOptions::default()).map_err(|e| e.to_string())?;
            if v.verified != VerificationStatus::ProvenFiniteByMatrix {
                return Err("cycle relation not proven".into());
            }
            count += 1;
        }
    }
    Ok(count)
}

fn finite_class_relations() -> Outcome {
    let mut relations = 0;
    let mut states = 0;
    let mut cycles = 0;
    for seed in [type_a(3), type_b(3)] {
        let Ok(reached) = reachable_within(&seed, 6) else {
            return Outcome::check(false, "mutation overflow");
        };
        for (m, seq) in reached {
            for e in [Sign::Minus, Sign::Plus] {
                let t = match companion_basis_for(&seed, &seq, &EpsPolicy::Fixed(e)) {
                    Ok(t) => t,
                    Err(err) => return Outcome::check(false, format!("{seq}: {err}")),
                };
                if t.matrix() != &m {
                    return Outcome::check(false, format!("{seq}: wrong matrix"));
                }
                match verify_all(&t) {
                    Ok(c) => relations += c,
                    Err(err) => return Outcome::check(false, format!("{seq}: {err}")),
                }
                states += 1;
                cycles += t
                    .companion
                    .diagram()
                    .enumerate_cycles()
                    .iter()
                    .filter(|c| c.oriented)
                    .count();
            }
        }
    }
    Outcome::check(
        cycles > 0,
        format!("{states} triples, {cycles} oriented cycles, {relations} relations verified"),
    )
}

fn generation() -> Outcome {
    let cases = [
        ("A2", type_a(2), 6),
        ("A3", type_a(3), 24),
        ("B2", type_b(2), 8),
        ("B3", type_b(3), 48),
    ];
    let mut checked = 0;
    for (index, (name, seed, order)) in cases.iter().enumerate() {
        let mut sequences: Vec<MutationSequence> = reachable_within(seed, 6)
            .unwrap_or_default()
            .into_iter()
            .map(|(_, s)| s)
            .collect();
        let mut rng = case_rng(SEED, index as u64);
        for _ in 0..40 {
            let len = rng.gen_range(0..=10);
            sequences.push(random_sequence(&mut rng, seed.n(), len));
        }
        for seq in sequences {
            let signs = random_signs(&mut rng, seq.len());
            let t = match companion_basis_for(seed, &seq, &EpsPolicy::PerStep(signs)) {
                Ok(t) => t,
                Err(e) => return Outcome::check(false, format!("{name} {seq}: {e}")),
            };
            let Ok(gens) = t.reflections() else {
                return Outcome::check(false, format!("{name} {seq}: bad reflections"));
            };
            let got = group_order(&gens, 1000);
            if got != GroupOrder::Finite(*order) {
                return Outcome::check(false, format!("{name} {seq}: {got:?}"));
            }
            checked += 1;
        }
    }
    Outcome::check(true, format!("{checked} sequences"))
}

/// Triples whose diagrams contain oriented cycles: the A3/B3 classes and
/// random corpus walks.
fn cyclic_corpus() -> Vec<CompanionTriple> {
    let mut out = Vec::new();
    for seed in [type_a(3), type_b(3), type_a(4), type_b(4)] {
        for (_, seq) in reachable_within(&seed, 4).unwrap_or_default() {
            if let Ok(t) = companion_basis_for(&seed, &seq, &EpsPolicy::Fixed(Sign::Minus)) {
                out.push(t);
            }
        }
    }
    let config = SeedConfig {
        min_n: 3,
        max_n: 6,
        weights: vec![1, 2, 3, 4],
        ..SeedConfig::default()
    };
    for i in 0..200 {
        let mut rng = case_rng(SEED + 1, i);
        let seed = random_acyclic_seed(&mut rng, &config);
        let len = rng.gen_range(1..=5);
        let seq = random_sequence(&mut rng, seed.n(), len);
        let signs = random_signs(&mut rng, len);
        if let Ok(t) = companion_basis_for(&seed, &seq, &EpsPolicy::PerStep(signs)) {
            out.push(t);
        }
    }
    out.retain(|t| {
        t.companion
            .diagram()
            .enumerate_cycles()
            .iter()
            .any(|c| c.oriented)
    });
    out
}

fn path_systems() -> Outcome {
    let mut compared = 0;
    let mut verified = 0;
    for t in cyclic_corpus() {
        let g = t.companion.diagram();
        for cycle in g.enumerate_cycles().iter().filter(|c| c.oriented) {
            let d = cycle.len();
            for s in 0..d {
                // edge i → j on the cycle; the path runs from j around to i
                let (i, j) = (cycle.vertices[s], cycle.vertices[(s + 1) % d]);
                let interior: Vec<usize> = (2..d).map(|o| cycle.vertices[(s + o) % d]).collect();
                let Ok(ps) = PathSystem::new(&g, i, j, vec![interior]) else {
                    return Outcome::check(false, "cycle did not yield a path system");
                };
                let Ok((_, signs)) = normalize_signs(&t.companion, &ps) else {
                    return Outcome::check(false, "normalization failed on a corpus cycle");
                };
                let normalized = t.apply_signs(&signs);
                let r =
                    match path_system_relation(&ps, &normalized.companion, PathPolicy::default()) {
                        Ok(r) => r,
                        Err(e) => return Outcome::check(false, e.to_string()),
                    };
                let Ok(c) = cycle_relation(&g, &cycle.vertices, j) else {
                    return Outcome::check(false, "cycle relation failed");
                };
                if c.x != r.x {
                    return Outcome::check(
                        false,
                        format!("x mismatch: path system {} vs cycle {}", r.x, c.x),
                    );
                }
                compared += 1;
                if let Ok(v) = verify_relation(&r, &normalized, VerifyOptions::default()) {
                    if v.verified != VerificationStatus::Failed {
                        verified += 1;
                    }
                }
            }
        }
    }

    // edge 1 → 2 with two disjoint paths 2 → 3 → 1 and 2 → 4 → 1
    let two = SkewMatrix::new(vec![
        vec![0, -1, 1, 1],
        vec![1, 0, -1, -1],
        vec![-1, 1, 0, 0],
        vec![-1, 1, 0, 0],
    ])
    .expect("valid matrix");
    let Some((seed, seq)) = find_acyclic_ancestor(&two, 10_000) else {
        return Outcome::check(false, "no acyclic seed for the two-path example");
    };
    let example = (|| -> Result<bool, RelationError> {
        let t = companion_basis_for(&seed, &seq, &EpsPolicy::Fixed(Sign::Minus))?;
        let g = t.companion.diagram();
        let ps = PathSystem::new(&g, 0, 1, vec![vec![2], vec![3]])?;
        let (_, signs) = normalize_signs(&t.companion, &ps)?;
        let t = t.apply_signs(&signs);
        let r = path_system_relation(&ps, &t.companion, PathPolicy::default())?;
        let v = verify_relation(&r, &t, VerifyOptions::default())?;
        Ok(r.x == BigInt::from(1)
            && r.m == Order::Finite(3)
            && v.verified == VerificationStatus::ProvenFiniteByMatrix)
    })();
    let example_ok = matches!(example, Ok(true));
    Outcome::check(
        compared > 0 && verified == compared && example_ok,
        format!(
            "{compared} single-path systems agree, {verified} verified by matrices; two-path example {}",
            if example_ok { "verified" } else { "FAILED" }
        ),
    )
}

/// Random path system on a random edge of the triple's diagram, if any.
fn random_path_system<R: Rng>(rng: &mut R, t: &CompanionTriple) -> Option<PathSystem> {
    let g = t.companion.diagram();
    let mut edges: Vec<(usize, usize)> = g.edges().map(|e| (e.tail, e.head)).collect();
    edges.shuffle(rng);
    for (i, j) in edges {
        let mut cands = PathSystem::candidate_paths(&g, i, j);
        if cands.is_empty() {
            continue;
        }
        cands.shuffle(rng);
        let mut used = BTreeSet::new();
        let mut paths = Vec::new();
        for p in cands {
            if p.iter().all(|v| !used.contains(v)) {
                used.extend(p.iter().copied());
                paths.push(p);
            }
        }
        let r = rng.gen_range(1..=paths.len());
        paths.truncate(r);
        return PathSystem::new(&g, i, j, paths).ok();
    }
    None
}

fn coefficient_claim() -> Outcome {
    let main = coefficient_claim_with(PathPolicy::default());
    let forward = coefficient_claim_with(PathPolicy::Forward);
    Outcome::check(
        main.passed,
        format!(
            "{}; forward-position paths: {}",
            main.detail, forward.detail
        ),
    )
}

fn coefficient_claim_with(policy: PathPolicy) -> Outcome {
    let config = SeedConfig {
        min_n: 3,
        max_n: 7,
        edge_probability: 0.6,
        weights: vec![1, 2, 3, 4],
        ..SeedConfig::default()
    };
    let mut valid = 0;
    let mut multi = 0;
    let mut skipped = 0;
    let mut failures = Vec::new();
    let mut index = 0u64;
    while valid < 200 && index < 100_000 {
        let mut rng = case_rng(SEED + 2, index);
        index += 1;
        let seed = random_acyclic_seed(&mut rng, &config);
        let len = rng.gen_range(1..=6);
        let seq = random_sequence(&mut rng, seed.n(), len);
        let signs = random_signs(&mut rng, len);
        let Ok(t) = companion_basis_for(&seed, &seq, &EpsPolicy::PerStep(signs)) else {
            skipped += 1;
            continue;
        };
        let Some(ps) = random_path_system(&mut rng, &t) else {
            continue;
        };
        let Ok((_, signs)) = normalize_signs(&t.companion, &ps) else {
            skipped += 1;
            continue;
        };
        let t = t.apply_signs(&signs);
        valid += 1;
        if ps.paths().len() > 1 {
            multi += 1;
        }
        match basis_coefficients(&t, &ps, policy) {
            Ok(entries) if entries.iter().all(|e| e.holds) => {}
            Ok(entries) => failures.push(format!(
                "case {}: vertices {:?}",
                index - 1,
                entries
                    .iter()
                    .filter(|e| !e.holds)
                    .map(|e| e.vertex + 1)
                    .collect::<Vec<_>>()
            )),
            Err(e) => failures.push(format!("case {}: {e}", index - 1)),
        }
    }
    Outcome::check(
        valid == 200 && failures.is_empty(),
        format!(
            "{valid} systems ({multi} with several paths), {} failures, {skipped} skipped{}",
            failures.len(),
            failures
                .first()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        ),
    )
}

fn weight_ge4_walks() -> Outcome {
    let config3 = SeedConfig {
        min_n: 3,
        max_n: 3,
        edge_probability: 1.0,
        weights: vec![4, 5, 8, 9, 16],
        ..SeedConfig::default()
    };
    let config4 = SeedConfig {
        min_n: 4,
        max_n: 4,
        ..config3.clone()
    };
    let runs: Vec<(SkewMatrix, u64)> = (0..5u64)
        .flat_map(|s| {
            let a = random_acyclic_seed(&mut case_rng(SEED + 3, s), &config3);
            let b = random_acyclic_seed(&mut case_rng(SEED + 4, s), &config4);
            [(a, s), (b, s)]
        })
        .collect();
    let results: Vec<_> = runs
        .par_iter()
        .map(|(m, s)| {
            check_weight_ge4_walk(
                m,
                WalkOptions {
                    steps: 10_000,
                    seed: *s,
                    ..WalkOptions::default()
                },
            )
        })
        .collect();
    let mut applied = 0;
    let mut retreats = 0;
    let mut min_weight = u128::MAX;
    for r in &results {
        match r {
            Ok(r) if r.ok() => {
                applied += r.applied;
                retreats += r.retreats;
                min_weight = min_weight.min(r.min_weight.unwrap_or(u128::MAX));
            }
            Ok(r) => return Outcome::check(false, format!("violation {:?}", r.violations[0])),
            Err(e) => return Outcome::check(false, e.to_string()),
        }
    }
    Outcome::check(
        min_weight >= 4,
        format!(
            "{} walks, {applied} forward steps, {retreats} retreats at the entry cap, min weight {min_weight}",
            results.len()
        ),
    )
}

fn random_real_root<R: Rng>(rng: &mut R, t: &CompanionTriple) -> Option<RootVec> {
    let n = t.n();
    let mut v = RootVec::simple(n, rng.gen_range(0..n));
    for _ in 0..rng.gen_range(0..=5) {
        let i = rng.gen_range(0..n);
        v = t.lattice.reflect(&RootVec::simple(n, i), &v).ok()?;
    }
    Some(v)
}

fn two_or_infinity() -> Outcome {
    let config = SeedConfig {
        min_n: 2,
        max_n: 5,
        edge_probability: 0.6,
        weights: vec![4, 8, 9, 16],
        ..SeedConfig::default()
    };
    let mut pairs = 0;
    let mut infinite = 0;
    let mut index = 0;
    while pairs < 500 {
        let mut rng = case_rng(SEED + 5, index);
        index += 1;
        let seed = random_acyclic_seed(&mut rng, &config);
        let Ok(t) = CompanionTriple::seed(&seed) else {
            continue;
        };
        let (Some(u), Some(v)) = (
            random_real_root(&mut rng, &t),
            random_real_root(&mut rng, &t),
        ) else {
            continue;
        };
        if u == v || u == -&v {
            continue;
        }
        match two_infinity_order(&t.lattice, &u, &v) {
            Ok(r) => {
                let by_k = if r.k == BigInt::from(0) {
                    Order::Finite(2)
                } else {
                    Order::Infinite
                };
                if r.order != by_k || r.order != r.lattice_order {
                    return Outcome::check(
                        false,
                        format!(
                            "{u:?}, {v:?}: k = {}, lattice order {}",
                            r.k, r.lattice_order
                        ),
                    );
                }
                if !matches!(r.order, Order::Finite(2) | Order::Infinite) {
                    return Outcome::check(false, format!("order {}", r.order));
                }
                if r.order == Order::Infinite {
                    infinite += 1;
                }
                pairs += 1;
            }
            Err(e) => return Outcome::check(false, e.to_string()),
        }
    }
    Outcome::check(
        true,
        format!("{pairs} pairs, {infinite} of infinite order, all matching the lattice"),
    )
}

fn affine_dn() -> Outcome {
    let mut lines = Vec::new();
    let mut passed = true;
    let mut unattainable = None;
    for n in 4..=8 {
        match affine_dn_setup(n) {
            Ok(setup) => match affine_dn_check(&setup.triple, &setup.labeling) {
                Ok(r) => {
                    lines.push(format!("D̃{n} (γ,δ) = {}", r.pairing));
                    passed &= r.passed();
                }
                Err(e) => {
                    lines.push(format!("D̃{n} {e}"));
                    passed = false;
                }
            },
            Err(e) => {
                lines.push(format!("D̃{n} no pattern"));
                passed = false;
                if n == 4 {
                    unattainable = Some(format!(
                        "D̃4: {e}; the pattern needs a unicyclic diagram and the D̃4 class has none"
                    ));
                }
            }
        }
    }
    let only_d4 = lines
        .iter()
        .filter(|l| l.contains("no pattern") || !l.ends_with("= 0"))
        .count()
        == 1
        && unattainable.is_some();
    Outcome {
        passed,
        detail: lines.join(", "),
        unattainable: if only_d4 { unattainable } else { None },
    }
}

fn reachability() -> Outcome {
    let config = SeedConfig {
        min_n: 2,
        max_n: 6,
        ..SeedConfig::default()
    };
    let mut ok = 0;
    let mut index = 0;
    while ok < 100 && index < 10_000 {
        let mut rng = case_rng(SEED + 6, index);
        index += 1;
        let seed = random_acyclic_seed(&mut rng, &config);
        let len = rng.gen_range(0..=6);
        let seq = random_sequence(&mut rng, seed.n(), len);
        let signs: Vec<Sign> = (0..len)
            .map(|_| eps(if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let mut c = Companion::generalized_cartan(&seed);
        let mut fine = true;
        for (k, e) in seq.iter().zip(&signs) {
            match c.mutate(k, *e, false) {
                Ok(next) => c = next,
                Err(_) => {
                    fine = false;
                    break;
                }
            }
        }
        if !fine {
            continue;
        }
        // scramble by sign changes so the check has to recover them
        let scramble: Vec<i64> = (0..seed.n())
            .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect();
        let target = c.apply_signs(&scramble);
        let r = match reachability_check(&seed, &seq, &target, None) {
            Ok(r) => r,
            Err(e) => return Outcome::check(false, format!("case {index}: {e}")),
        };
        let identified = r.reachable
            && r.eps.as_ref().and_then(|e| {
                let mut c = Companion::generalized_cartan(&seed);
                for (k, s) in seq.iter().zip(e) {
                    c = c.mutate(k, *s, false).ok()?;
                }
                equal_up_to_sign_changes(&c, &target)
            }) == r.signs;
        if !identified {
            return Outcome::check(false, format!("case {index} not identified"));
        }
        ok += 1;
    }
    Outcome::check(ok == 100, format!("{ok} cases"))
}
