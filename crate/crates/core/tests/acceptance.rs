//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails or overruns its time budget.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fusscat::exact::{
    b3_closed, b3_prime, b3_prime_boundary, ballot, bp_closed, catalan, fuss_catalan, StatIndex,
};
use fusscat::lattice::{
    cycle_word_profile, distribution, enumerate_paths, enumerate_trees, good_shift_fraction,
    periodic_cycle_word, random_cycle_word, tree_distribution, LatticePath, PAryTree,
};
use fusscat::series::{build_f, cubic_residual, rational_b3prime, solve_g};
use fusscat::simplex::{build_prime_grid, build_simplex, FCSimplex};

type Outcome = Result<String, String>;

/// Label, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn idx(p: u32, n: u64, ks: &[u64]) -> StatIndex {
    StatIndex::new(p, n, ks.to_vec()).unwrap()
}

fn layer(s: &FCSimplex, n: u64) -> Vec<(Vec<u64>, BigInt)> {
    s.layer(n)
        .unwrap()
        .into_iter()
        .map(|(ks, v)| (ks, v.clone()))
        .collect()
}

fn golden_tables() -> Outcome {
    let triangle: [&[i64]; 6] = [
        &[1],
        &[1, 1],
        &[1, 2, 2],
        &[1, 3, 5, 5],
        &[1, 4, 9, 14, 14],
        &[1, 5, 14, 28, 42, 42],
    ];
    let s2 = build_simplex(2, 6).map_err(|e| e.to_string())?;
    for (i, row) in triangle.iter().enumerate() {
        let got: Vec<BigInt> = layer(&s2, i as u64 + 1)
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        let want: Vec<BigInt> = row.iter().map(|&v| int(v)).collect();
        ensure(got == want, || format!("triangle row {}: {got:?}", i + 1))?;
    }
    let sections: [&[&[i64]]; 5] = [
        &[&[1]],
        &[&[1, 1], &[1]],
        &[&[1, 2, 2], &[2, 3], &[2]],
        &[&[1, 3, 5, 5], &[3, 8, 10], &[5, 10], &[5]],
        &[
            &[1, 4, 9, 14, 14],
            &[4, 15, 30, 35],
            &[9, 30, 45],
            &[14, 35],
            &[14],
        ],
    ];
    let s3 = build_simplex(3, 5).map_err(|e| e.to_string())?;
    for (i, sec) in sections.iter().enumerate() {
        let got = s3.section(i as u64 + 1).map_err(|e| e.to_string())?;
        let want: Vec<Vec<BigInt>> = sec
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        ensure(got == want, || format!("section n={}: {got:?}", i + 1))?;
    }
    let prime: [[i64; 5]; 5] = [
        [1, 2, 2, 0, -5],
        [2, 3, 0, -10, -30],
        [2, 0, -12, -40, -90],
        [0, -10, -40, -100, -200],
        [-5, -30, -90, -200, -375],
    ];
    let grid = build_prime_grid(3, 4, 4).map_err(|e| e.to_string())?;
    let got = grid.slice(3).map_err(|e| e.to_string())?;
    let want: Vec<Vec<BigInt>> = prime
        .iter()
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect();
    ensure(got == want, || format!("B'3 n=3: {got:?}"))?;
    Ok("triangle 6 rows, sections n=1..5, B'3 n=3 matrix".into())
}

fn sum_identities() -> Outcome {
    let s2 = build_simplex(2, 30).unwrap();
    for n in 1..=30 {
        ensure(s2.layer_sum(n).unwrap() == catalan(n), || {
            format!("catalan n={n}")
        })?;
    }
    let first: Vec<BigInt> = (1..=5).map(|n| fuss_catalan(3, n)).collect();
    ensure(first == [1, 3, 12, 55, 273].map(int), || {
        format!("C3(1..5) = {first:?}")
    })?;
    let s3 = build_simplex(3, 20).unwrap();
    for n in 1..=20 {
        ensure(s3.layer_sum(n).unwrap() == fuss_catalan(3, n), || {
            format!("C3 n={n}")
        })?;
    }
    for p in 2..=6 {
        let s = build_simplex(p, 12).unwrap();
        for n in 1..=12 {
            ensure(s.layer_sum(n).unwrap() == fuss_catalan(p, n), || {
                format!("C{p} n={n}")
            })?;
        }
    }
    Ok("B n<=30, B3 n<=20, B_p p<=6 n<=12".into())
}

fn closed_forms() -> Outcome {
    let s2 = build_simplex(2, 30).unwrap();
    for n in 1..=30u64 {
        for (ks, v) in layer(&s2, n) {
            ensure(v == ballot(n as i64, ks[0] as i64), || {
                format!("ballot n={n} k={}", ks[0])
            })?;
        }
    }
    let mut cells = 0u64;
    for p in 2..=6 {
        let s = build_simplex(p, 12).unwrap();
        for n in 1..=12 {
            for (ks, v) in layer(&s, n) {
                ensure(v == bp_closed(&idx(p, n, &ks)), || {
                    format!("p={p} n={n} ks={ks:?}")
                })?;
                if p == 3 {
                    ensure(v == b3_closed(n as i64, ks[0] as i64, ks[1] as i64), || {
                        format!("B3 n={n} ks={ks:?}")
                    })?;
                }
                cells += 1;
            }
        }
    }
    let grid = build_prime_grid(12, 12, 12).unwrap();
    for n in 0..=12i64 {
        for k in 0..=12i64 {
            for l in 0..=12i64 {
                let want = if n == 0 {
                    b3_prime_boundary(k, l)
                } else {
                    b3_prime(n, k, l)
                };
                let got = grid.value(n as u64, k as u64, l as u64).unwrap();
                ensure(*got == want, || {
                    format!("B'3 ({n},{k},{l}): {got} vs {want}")
                })?;
            }
        }
    }
    Ok(format!("{cells} simplex cells, 13^3 B'3 cells"))
}

fn enumeration_oracle() -> Outcome {
    let mut totals = Vec::new();
    for (p, top) in [(2u32, 10u64), (3, 8), (4, 6)] {
        let s = build_simplex(p, top).unwrap();
        for n in 1..=top {
            let dist = distribution(p, n).map_err(|e| e.to_string())?;
            let layer = layer(&s, n);
            let nonzero: BTreeMap<Vec<u64>, BigInt> =
                layer.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            ensure(dist == nonzero, || {
                format!("p={p} n={n} distribution differs")
            })?;
            if p == 2 {
                for (ks, c) in &dist {
                    ensure(*c == ballot(n as i64, ks[0] as i64), || {
                        format!("ballot n={n}")
                    })?;
                }
            }
            if n == top {
                totals.push(dist.values().sum::<BigInt>());
            }
        }
    }
    ensure(totals[1] == int(43263) && totals[2] == int(7084), || {
        format!("totals {totals:?}")
    })?;
    Ok(format!("paths at top size {totals:?}"))
}

fn bijection_and_involution() -> Outcome {
    for p in 2..=4u32 {
        for n in 1..=6u64 {
            let trees = enumerate_trees(p, n).unwrap();
            ensure(BigInt::from(trees.len()) == fuss_catalan(p, n), || {
                format!("p={p} n={n} count")
            })?;
            let mut image = BTreeSet::new();
            for t in &trees {
                let path = t.to_path();
                let back = PAryTree::from_path(&path).map_err(|e| e.to_string())?;
                ensure(&back == t, || format!("round trip {t}"))?;
                image.insert(path);
            }
            let paths: BTreeSet<LatticePath> = enumerate_paths(p, n).unwrap().into_iter().collect();
            ensure(image == paths, || format!("p={p} n={n} image"))?;
        }
    }
    let mut n5 = (0, 0);
    for n in 1..=6u64 {
        let trees = enumerate_trees(3, n).unwrap();
        let before = tree_distribution(&trees);
        let mut after: BTreeMap<Vec<u64>, BigInt> = BTreeMap::new();
        for t in &trees {
            let u = t
                .last_right_string_involution()
                .map_err(|e| e.to_string())?;
            ensure(u.last_right_string_involution().as_ref() == Ok(t), || {
                format!("square of {t}")
            })?;
            let (a, b) = (t.stats().ks, u.stats().ks);
            ensure(a == [b[1], b[0]], || format!("{t}: {a:?} -> {b:?}"))?;
            *after.entry(b).or_default() += 1;
        }
        for (ks, size) in &before {
            let swapped = after.get(&vec![ks[1], ks[0]]).cloned().unwrap_or_default();
            ensure(swapped == *size, || format!("n={n} class {ks:?}"))?;
        }
        if n == 5 {
            let get = |k: &[u64]| before.get(k).cloned().unwrap_or_default();
            ensure(get(&[1, 2]) == int(30) && get(&[2, 1]) == int(30), || {
                "class (1,2) at n=5".into()
            })?;
            n5 = (30, 30);
        }
    }
    Ok(format!(
        "p<=4 n<=6 round trips; n=5 classes (1,2)<->(2,1) sizes {n5:?}"
    ))
}

fn cycle_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (mut words, mut periodic, mut cells) = (0u64, 0u64, 0u64);
    for n in 1..=8u64 {
        for k in 0..=3u64 {
            for l in 0..=3u64 {
                if k + l >= n {
                    continue;
                }
                cells += 1;
                let want = BigRational::new(
                    BigInt::from(n as i64 - k as i64 - l as i64),
                    BigInt::from(n + k),
                );
                let mut batch: Vec<Vec<_>> = (0..1000)
                    .map(|_| random_cycle_word(&mut rng, n, k, l))
                    .collect();
                for r in 2..=4 {
                    for _ in 0..50 {
                        if let Some(w) = periodic_cycle_word(&mut rng, n, k, l, r) {
                            batch.push(w);
                            periodic += 1;
                        }
                    }
                }
                for w in &batch {
                    let prof = cycle_word_profile(w).map_err(|e| e.to_string())?;
                    ensure((prof.n, prof.k, prof.l) == (n, k, l), || "profile".into())?;
                    let got = good_shift_fraction(w).map_err(|e| e.to_string())?;
                    ensure(got == want, || format!("({n},{k},{l}): {got} != {want}"))?;
                }
                words += batch.len() as u64;
            }
        }
    }
    Ok(format!(
        "{cells} classes, {words} words ({periodic} periodic)"
    ))
}

fn generating_functions() -> Outcome {
    let caps = (8, 8, 8);
    let g = solve_g(caps).map_err(|e| e.to_string())?;
    ensure(cubic_residual(&g).unwrap().is_zero(), || {
        "cubic residual".into()
    })?;
    let f = build_f(&g).map_err(|e| e.to_string())?;
    for (i, j, k, v) in f.table() {
        let (n, k1, l) = (i as i64, j as i64, k as i64);
        let want = if n == 0 {
            int(i64::from(k1 == 0 && l == 0))
        } else {
            b3_closed(n, k1, l)
        };
        ensure(v == want, || format!("[t^{i} x^{j} y^{k}]F = {v}"))?;
    }
    let r = rational_b3prime(caps).map_err(|e| e.to_string())?;
    for (i, j, k, v) in r.table() {
        let (n, k1, l) = (i as i64, j as i64, k as i64);
        let want = if n == 0 {
            b3_prime_boundary(k1, l)
        } else {
            b3_prime(n, k1, l)
        };
        ensure(v == want, || format!("[t^{i} x^{j} y^{k}] rational = {v}"))?;
    }
    Ok("caps (8,8,8): cubic residual 0, F = B3, rational = B'3 (t^0 row = boundary layer)".into())
}

fn fault_sensitivity() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fusscat");
    let run = |extra: &[&str]| -> Result<i32, String> {
        let out = Command::new(bin)
            .args(["verify", "--suite", "all"])
            .args(extra)
            .output()
            .map_err(|e| e.to_string())?;
        out.status.code().ok_or_else(|| "killed".to_string())
    };
    ensure(run(&["--quick"])? == 0, || "clean run failed".into())?;
    // one cell per artifact: each simplex arity, both regions of the B'3
    // grid, and each series
    let faults = [
        "simplex:2:25:24",
        "simplex:3:5:1,2",
        "simplex:4:12:3,3,5",
        "simplex:5:7:1,0,2,0",
        "simplex:6:12:2,0,1,0,3",
        "prime:0:4:0",
        "prime:12:12:12",
        "F:3:1:1",
        "G:5:1:1",
        "rational:8:8:8",
    ];
    for f in faults {
        let code = run(&["--quick", "--inject-fault", f])?;
        ensure(code == 1, || format!("fault {f}: exit {code}"))?;
    }
    Ok(format!("{} injected faults each exit 1", faults.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 golden tables", 1, golden_tables),
        ("2 sum identities", 1, sum_identities),
        ("3 closed form vs recurrence", 5, closed_forms),
        ("4 enumeration oracle", 60, enumeration_oracle),
        ("5 bijection and involution", 30, bijection_and_involution),
        ("6 cycle lemma", 10, cycle_lemma),
        ("7 generating functions", 5, generating_functions),
        ("8 fault sensitivity", 10, fault_sensitivity),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} criterion {name} [{:.2} s / {budget} s]: {detail}",
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
