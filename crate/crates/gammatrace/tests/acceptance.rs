//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gammatrace_core::clifford::{build_rep, Signature, SignatureKind};
use gammatrace_core::solver::{
    general_algorithm, general_algorithm_with, minimal_algorithm, minimal_algorithm_with, random_antisym,
    recurrence_alpha, SolverError,
};
use gammatrace_core::verify::{
    epsilon_contraction, pseudoscalar_ratio, pseudoscalar_trace, symmetrized_trace_bruteforce, verify_master_formula,
    verify_rank2_identity, MasterFormulaCheck,
};
use gammatrace_core::{AlphaTable, ComplexRational, Partition, Rational, SamplerConfig};

/// Published coefficients for n = 1..7, partition label and value.
const TABLE: &[(usize, &str, &str)] = &[
    (1, "1", "1"),
    (2, "1+1", "1/2"),
    (2, "2", "-2/3"),
    (3, "1+1+1", "1/6"),
    (3, "2+1", "-2/3"),
    (3, "3", "32/45"),
    (4, "1+1+1+1", "1/24"),
    (4, "2+1+1", "-1/3"),
    (4, "2+2", "2/9"),
    (4, "3+1", "32/45"),
    (4, "4", "-272/315"),
    (5, "1+1+1+1+1", "1/120"),
    (5, "2+1+1+1", "-1/9"),
    (5, "2+2+1", "2/9"),
    (5, "3+1+1", "16/45"),
    (5, "3+2", "-64/135"),
    (5, "4+1", "-272/315"),
    (5, "5", "15872/14175"),
    (6, "1+1+1+1+1+1", "1/720"),
    (6, "2+1+1+1+1", "-1/36"),
    (6, "2+2+1+1", "1/9"),
    (6, "2+2+2", "-4/81"),
    (6, "3+1+1+1", "16/135"),
    (6, "3+2+1", "-64/135"),
    (6, "3+3", "512/2025"),
    (6, "4+1+1", "-136/315"),
    (6, "4+2", "544/945"),
    (6, "5+1", "15872/14175"),
    (6, "6", "-707584/467775"),
    (7, "1+1+1+1+1+1+1", "1/5040"),
    (7, "2+1+1+1+1+1", "-1/180"),
    (7, "2+2+1+1+1", "1/27"),
    (7, "2+2+2+1", "-4/81"),
    (7, "3+1+1+1+1", "4/135"),
    (7, "3+2+1+1", "-32/135"),
    (7, "3+2+2", "64/405"),
    (7, "3+3+1", "512/2025"),
    (7, "4+1+1+1", "-136/945"),
    (7, "4+2+1", "544/945"),
    (7, "4+3", "-8704/14175"),
    (7, "5+1+1", "7936/14175"),
    (7, "5+2", "-31744/42525"),
    (7, "6+1", "-707584/467775"),
    (7, "7", "89473024/42567525"),
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(s: &str) -> Rational {
    s.parse().expect("valid rational literal")
}

fn table_for(n: usize) -> AlphaTable {
    let mut rows: Vec<(Partition, Rational)> = TABLE
        .iter()
        .filter(|(m, _, _)| *m == n)
        .map(|(_, s, a)| (s.parse().unwrap(), q(a)))
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    AlphaTable::from_values(n, rows.into_iter().map(|(_, a)| a).collect()).expect("complete table")
}

fn compare(name: &str, n: usize, got: &AlphaTable) -> Result<usize, String> {
    let mut checked = 0;
    for (_, label, expected) in TABLE.iter().filter(|(m, _, _)| *m == n) {
        let value = got
            .get_label(label)
            .ok_or_else(|| format!("{name}: no entry for {label}"))?;
        if *value != q(expected) {
            return Err(format!("{name}: alpha_{label} = {value}, expected {expected}"));
        }
        checked += 1;
    }
    if checked != got.len() {
        return Err(format!(
            "{name}: n = {n} has {} entries, table lists {checked}",
            got.len()
        ));
    }
    Ok(checked)
}

fn ac1_table() -> Outcome {
    let cfg = SamplerConfig::default();
    let minimal = minimal_algorithm(7).map_err(|e| e.to_string())?;
    let mut general_count = 0;
    let mut minimal_count = 0;
    for n in 1..=7 {
        let g = general_algorithm(n, &cfg).map_err(|e| format!("general n = {n}: {e}"))?;
        general_count += compare("general", n, &g)?;
        minimal_count += compare("minimal", n, minimal.table(n).unwrap())?;
    }
    if general_count != TABLE.len() || minimal_count != TABLE.len() {
        return Err(format!("checked {general_count}/{minimal_count} of {}", TABLE.len()));
    }
    Ok(format!(
        "{} coefficients for n = 1..7 from both algorithms",
        TABLE.len()
    ))
}

fn ac2_recurrence() -> Outcome {
    let cfg = SamplerConfig::default();
    let minimal = minimal_algorithm(7).map_err(|e| e.to_string())?;
    let t3 = general_algorithm(3, &cfg).map_err(|e| e.to_string())?;
    let t2 = general_algorithm(2, &cfg).map_err(|e| e.to_string())?;
    let expect = [
        (&t2, "1+1", "1/2"),
        (&t3, "1+1+1", "1/6"),
        (&t3, "2+1", "-2/3"),
        (minimal.table(7).unwrap(), "3+2+1+1", "-32/135"),
    ];
    for (t, label, value) in expect {
        if t.get_label(label) != Some(&q(value)) {
            return Err(format!("alpha_{label} = {:?}, expected {value}", t.get_label(label)));
        }
    }
    // Product rule on every entry of the general-algorithm tables.
    let mut checked = 0;
    for n in 1..=5 {
        let g = general_algorithm(n, &cfg).map_err(|e| e.to_string())?;
        for (s, a) in g.iter() {
            let predicted = recurrence_alpha(s, &minimal.elementary).map_err(|e| e.to_string())?;
            if &predicted != a {
                return Err(format!("alpha_{s}: solver {a}, product rule {predicted}"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "named identities hold; product rule matches {checked} general-algorithm entries (n <= 5)"
    ))
}

fn ac3_bruteforce() -> Outcome {
    let mut trials = 0;
    for (n, seed) in [(1, 11), (2, 12), (3, 13), (4, 14)] {
        let cfg = SamplerConfig::with_seed(seed);
        for r in verify_master_formula(n, 3, &cfg).map_err(|e| e.to_string())? {
            if !r.matched {
                return Err(format!("n = {n} trial {}: {} != {}", r.trial, r.lhs, r.rhs));
            }
            trials += 1;
        }
        let published =
            MasterFormulaCheck::with_table(table_for(n), &cfg, &SignatureKind::Minkowski).map_err(|e| e.to_string())?;
        for trial in 0..3 {
            let r = published.trial(trial).map_err(|e| e.to_string())?;
            if !r.matched {
                return Err(format!(
                    "published table, n = {n} trial {trial}: {} != {}",
                    r.lhs, r.rhs
                ));
            }
            trials += 1;
        }
    }
    Ok(format!("{trials} exact brute-force matches for n = 1..4"))
}

fn ac4_structure() -> Outcome {
    for d in 2..=14 {
        let rep = build_rep(&Signature::minkowski(d)).map_err(|e| e.to_string())?;
        rep.check_clifford()
            .map_err(|(a, b)| format!("d = {d}: anticommutator fails at ({a}, {b})"))?;
    }
    let cfg = SamplerConfig::with_seed(21);
    for d in [4, 6] {
        let rep = build_rep(&Signature::minkowski(d)).unwrap();
        for k in [1usize, 3, 5] {
            let ts: Vec<_> = (0..k as u64)
                .map(|i| random_antisym(d, &cfg, 100 * k as u64 + i))
                .collect();
            let tr = symmetrized_trace_bruteforce(&rep, &ts).map_err(|e| e.to_string())?;
            if !tr.is_zero() {
                return Err(format!("d = {d}, {k} factors: trace {tr}"));
            }
        }
    }
    let mut pairs = 0;
    for d in [2, 4, 6] {
        let rep = build_rep(&Signature::minkowski(d)).unwrap();
        for i in 0..10u64 {
            let a = random_antisym(d, &cfg, 1000 + 2 * i);
            let b = random_antisym(d, &cfg, 1001 + 2 * i);
            let r = verify_rank2_identity(&rep, &a, &b).map_err(|e| e.to_string())?;
            if !r.matched {
                return Err(format!("rank-2 identity, d = {d}: {} != {}", r.lhs, r.rhs));
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "Clifford relation d = 2..14; odd traces vanish; rank-2 identity on {pairs} pairs"
    ))
}

fn ac5_independence() -> Outcome {
    for n in 1..=4 {
        let reference = general_algorithm(n, &SamplerConfig::with_seed(1)).map_err(|e| e.to_string())?;
        for seed in 2..=5 {
            let other = general_algorithm(n, &SamplerConfig::with_seed(seed)).map_err(|e| e.to_string())?;
            if other != reference {
                return Err(format!("n = {n}: seed {seed} differs from seed 1"));
            }
        }
    }
    let cfg = SamplerConfig::default();
    for n in 1..=3 {
        let low = general_algorithm_with(n, &cfg, &Signature::minkowski(2 * n)).map_err(|e| e.to_string())?;
        let high = general_algorithm_with(n, &cfg, &Signature::minkowski(2 * n + 2)).map_err(|e| e.to_string())?;
        if low != high {
            return Err(format!("n = {n}: d = {} and d = {} disagree", 2 * n, 2 * n + 2));
        }
    }
    let mink = minimal_algorithm_with(6, &Signature::minkowski(2)).map_err(|e| e.to_string())?;
    let eucl = minimal_algorithm_with(6, &Signature::euclidean(2)).map_err(|e| e.to_string())?;
    if mink.elementary != eucl.elementary || mink.tables != eucl.tables {
        return Err("Euclidean and Minkowski minimal runs disagree".into());
    }
    Ok("5 seeds (n <= 4), d = 2n vs 2n+2 (n <= 3), Euclidean vs Minkowski (N <= 6) all identical".into())
}

fn ac6_rank() -> Outcome {
    match general_algorithm_with(3, &SamplerConfig::default(), &Signature::minkowski(4)) {
        Err(SolverError::RankDeficient {
            rank, size, attempts, ..
        }) => Ok(format!("n = 3 in d = 4: rank {rank} < {size} after {attempts} draws")),
        Ok(t) => Err(format!("expected rank deficiency, solved {t:?}")),
        Err(e) => Err(format!("expected rank deficiency, got {e}")),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn ac7_performance() -> Outcome {
    let (r25, t25) = timed(|| minimal_algorithm(25));
    r25.map_err(|e| e.to_string())?;
    let (r30, t30) = timed(|| minimal_algorithm(30));
    r30.map_err(|e| e.to_string())?;
    let (g6, tg6) = timed(|| general_algorithm(6, &SamplerConfig::default()));
    g6.map_err(|e| e.to_string())?;
    let report = format!(
        "minimal N=25 {:.2}s, N=30 {:.2}s, general n=6 {:.2}s",
        t25.as_secs_f64(),
        t30.as_secs_f64(),
        tg6.as_secs_f64()
    );
    if t25 < Duration::from_secs(60) && t30 < Duration::from_secs(600) && tg6 < Duration::from_secs(600) {
        Ok(report)
    } else {
        Err(format!("over budget: {report}"))
    }
}

fn ac8_pseudoscalar() -> Outcome {
    let rep = build_rep(&Signature::minkowski(4)).unwrap();
    let cfg = SamplerConfig::with_seed(31);
    let mut ratios: Vec<ComplexRational> = Vec::new();
    for draw in 0..5u64 {
        let ts = [random_antisym(4, &cfg, 2 * draw), random_antisym(4, &cfg, 2 * draw + 1)];
        let eps = epsilon_contraction(&ts).map_err(|e| e.to_string())?;
        if eps.is_zero() {
            return Err(format!("draw {draw}: vanishing epsilon contraction"));
        }
        let tr = pseudoscalar_trace(&rep, &ts).map_err(|e| e.to_string())?;
        ratios.push(tr.scale(&eps.recip().unwrap()));
    }
    if ratios.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!("ratios differ: {ratios:?}"));
    }
    let via_api = pseudoscalar_ratio(2, 5, &SamplerConfig::default()).map_err(|e| e.to_string())?;
    if via_api != ratios[0] {
        return Err(format!("library ratio {via_api} differs from {}", ratios[0]));
    }
    Ok(format!("ratio {} across 5 draws (Minkowski, d = 4)", ratios[0]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 table reproduction", ac1_table),
        ("AC2 recurrence identities", ac2_recurrence),
        ("AC3 brute-force equivalence", ac3_bruteforce),
        ("AC4 structural invariants", ac4_structure),
        ("AC5 independence", ac5_independence),
        ("AC6 rank threshold", ac6_rank),
        ("AC7 performance", ac7_performance),
        ("AC8 pseudoscalar proportionality", ac8_pseudoscalar),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let (outcome, elapsed) = timed(check);
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{:.1}s]", elapsed.as_secs_f64()),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail} [{:.1}s]", elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
