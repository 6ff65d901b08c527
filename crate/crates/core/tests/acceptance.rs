//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --test acceptance`.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use multhorn::combinatorics::{additive_horn_check, catalog, subsets, IndexSubset, TripleCatalog};
use multhorn::horn_body::{
    membership, membership_invertible, realize, sample_body, BodySpec, RealizeConfig,
};
use multhorn::spectra::random::{ginibre, with_singular_values};
use multhorn::spectra::{
    hermitian_eigenvalues, product_inequality_check, schubert_compression_check, ComplexMatrix,
    RngSeed, SingularSpectrum,
};
use multhorn::svf::{discretize, matrix_model, spectrum_to_step, vn_membership};
use rand::Rng;
use rand_distr::StandardNormal;
use support::gen::{hermitian_pair, random_spectrum, random_step};
use support::pieri::triple_intersection;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let t = start.elapsed();
    (
        t < limit,
        format!("{:.1}s of {}s", t.as_secs_f64(), limit.as_secs()),
    )
}

fn catalog_correctness() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    // sizes from an independent brute force: all subset triples, Pieri oracle
    for (n, expected) in [(1, 2), (2, 5), (3, 14)] {
        let mut brute = 0;
        for r in 0..=n {
            for i in subsets(n, r) {
                for j in subsets(n, r) {
                    for k in subsets(n, r) {
                        let shift = |s: &IndexSubset| {
                            s.elements()
                                .iter()
                                .enumerate()
                                .map(|(l, &x)| x - (l + 1))
                                .sum::<usize>()
                        };
                        let identity = shift(&i) + shift(&j) + shift(&k) == 2 * r * (n - r);
                        if identity
                            && triple_intersection(n, i.elements(), j.elements(), k.elements()) == 1
                        {
                            brute += 1;
                        }
                    }
                }
            }
        }
        let got = TripleCatalog::enumerate(n).unwrap().len();
        ok &= got == expected && brute == expected;
        notes.push(format!("n={n}: {got}"));
    }
    for n in [4, 5] {
        let a = TripleCatalog::enumerate(n).unwrap();
        let b = TripleCatalog::enumerate(n).unwrap();
        let deterministic = a.to_json() == b.to_json();
        let verified = a.iter().all(|t| {
            t.satisfies_dimension_identity()
                && triple_intersection(n, t.i().elements(), t.j().elements(), t.k().elements()) == 1
        });
        ok &= deterministic && verified;
        notes.push(format!(
            "n={n}: {} (deterministic {deterministic}, oracle-verified {verified})",
            a.len()
        ));
    }
    let (fast, time) = within(Duration::from_secs(60), start);
    Outcome::new(ok && fast, format!("{}; {time}", notes.join(", ")))
}

fn additive_oracle() -> Outcome {
    let mut failures = 0;
    let mut worst = f64::INFINITY;
    for n in 2..=5 {
        let cat = catalog(n).unwrap();
        for k in 0..200 {
            let (a, b) = hermitian_pair(n, RngSeed(20_000 + 1000 * n as u64 + k));
            let c = ComplexMatrix::from_dmatrix(a.inner() + b.inner()).unwrap();
            let (ea, eb, ec) = (
                hermitian_eigenvalues(&a).unwrap(),
                hermitian_eigenvalues(&b).unwrap(),
                hermitian_eigenvalues(&c).unwrap(),
            );
            let scale = [&ea, &eb, &ec]
                .iter()
                .flat_map(|v| v.iter())
                .fold(0.0f64, |m, x| m.max(x.abs()));
            let rep = additive_horn_check(&ea, &eb, &ec, &cat, 1e-9 * scale).unwrap();
            worst = worst.min(rep.worst_slack.value() / scale);
            failures += usize::from(!rep.passed());
        }
    }
    Outcome::new(
        failures == 0,
        format!("800 Hermitian pairs, {failures} violations, min relative slack {worst:.3e}"),
    )
}

fn product_inequalities() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut deficient = 0;
    let mut worst = f64::INFINITY;
    for n in 2..=5 {
        let cat = catalog(n).unwrap();
        let mut rng = RngSeed(30_000 + n as u64).rng();
        for k in 0..1000u64 {
            let seed = RngSeed(31_000 + 10_000 * n as u64 + k);
            let (a, b) = if k % 4 == 0 {
                deficient += 1;
                // rank deficient by construction: exact zeros in at least one factor
                let za = rng.random_range(0..n);
                let zb = if za == 0 {
                    rng.random_range(1..n)
                } else {
                    rng.random_range(0..n)
                };
                let sa = random_spectrum(&mut rng, n, za);
                let sb = random_spectrum(&mut rng, n, zb);
                (
                    with_singular_values(sa.values(), seed.derive(0)),
                    with_singular_values(sb.values(), seed.derive(1)),
                )
            } else if k % 2 == 0 {
                let sa = random_spectrum(&mut rng, n, 0);
                let sb = random_spectrum(&mut rng, n, 0);
                (
                    with_singular_values(sa.values(), seed.derive(0)),
                    with_singular_values(sb.values(), seed.derive(1)),
                )
            } else {
                (ginibre(n, seed.derive(0)), ginibre(n, seed.derive(1)))
            };
            let rep = product_inequality_check(&a, &b, &cat, 1e-8).unwrap();
            if rep.worst_slack.is_finite() {
                worst = worst.min(rep.worst_slack.value());
            }
            failures += usize::from(!rep.passed());
        }
    }
    let (fast, time) = within(Duration::from_secs(120), start);
    Outcome::new(
        failures == 0 && fast,
        format!("4000 pairs ({deficient} rank-deficient), {failures} violations, min slack {worst:.3e}; {time}"),
    )
}

fn sampling_inside_membership() -> Outcome {
    let battery: [(&[f64], &[f64]); 6] = [
        (&[2.0, 1.0], &[2.0, 1.0]),
        (&[3.0, 2.0, 1.0], &[2.0, 1.5, 0.5]),
        (&[3.0, 1.0, 0.0], &[2.0, 2.0, 1.0]),
        (&[1.0, 0.0, 0.0, 0.0], &[2.0, 1.0, 0.5, 0.25]),
        (&[2.0, 2.0, 1.0, 1.0], &[3.0, 1.0, 1.0, 1.0]),
        (&[4.0, 2.0, 1.0, 0.0], &[1.0, 1.0, 0.5, 0.0]),
    ];
    let total = 10_000;
    let mut failures = 0;
    let mut drawn = 0;
    for (idx, (l, m)) in battery.iter().enumerate() {
        let count = total / battery.len() + usize::from(idx < total % battery.len());
        let body = BodySpec::from_values(l, m).unwrap();
        for s in sample_body(&body, count, RngSeed(40_000 + idx as u64)).unwrap() {
            failures += usize::from(!membership(&body, &s, 1e-8).unwrap().passed());
            drawn += 1;
        }
    }
    Outcome::new(
        failures == 0,
        format!("{drawn} samples over 6 specs, {failures} rejected"),
    )
}

fn invertible_equivalence() -> Outcome {
    let mut disagreements = 0;
    let mut members = 0;
    let mut checked = 0;
    for n in [2, 3] {
        let mut rng = RngSeed(50_000 + n as u64).rng();
        for k in 0..10_000u64 {
            let lam = random_spectrum(&mut rng, n, 0);
            let mu = random_spectrum(&mut rng, n, 0);
            let body = BodySpec::new(lam.clone(), mu.clone()).unwrap();
            let det: f64 = lam.values().iter().chain(mu.values()).product();
            let nu = match k % 3 {
                0 => sample_body(&body, 1, RngSeed(51_000 + k))
                    .unwrap()
                    .remove(0),
                1 => {
                    let raw = random_spectrum(&mut rng, n, 0);
                    let c = (det / raw.values().iter().product::<f64>()).powf(1.0 / n as f64);
                    raw.scaled(c).unwrap()
                }
                _ => {
                    let v: Vec<f64> = (0..n)
                        .map(|_| (rng.sample::<f64, _>(StandardNormal) * 1.5).exp())
                        .collect();
                    SingularSpectrum::from_unsorted(v).unwrap()
                }
            };
            let a = membership(&body, &nu, 1e-9).unwrap().passed();
            let b = membership_invertible(&body, &nu, 1e-9).unwrap().passed();
            disagreements += usize::from(a != b);
            members += usize::from(a);
            checked += 1;
        }
    }
    Outcome::new(
        disagreements == 0,
        format!("{checked} triples ({members} members), {disagreements} disagreements"),
    )
}

fn realization() -> Outcome {
    let start = Instant::now();
    let cfg = RealizeConfig {
        seed: RngSeed(60_000),
        ..RealizeConfig::default()
    };
    let body = BodySpec::from_values(&[2.0, 1.0], &[2.0, 1.0]).unwrap();
    let mut ok = true;
    let mut worst_interior = 0.0f64;
    let mut worst_end = 0.0f64;
    let mut max_iters = 0;
    for k in 1..=9 {
        let t = 2.0 + 0.2 * k as f64;
        let nu = SingularSpectrum::new(vec![t, 4.0 / t]).unwrap();
        let res = realize(&body, &nu, &cfg).unwrap();
        ok &= res.residual < 1e-6 && res.iterations <= 5000;
        worst_interior = worst_interior.max(res.residual);
        max_iters = max_iters.max(res.iterations);
    }
    for end in [[2.0, 2.0], [4.0, 1.0]] {
        let res = realize(&body, &SingularSpectrum::new(end.to_vec()).unwrap(), &cfg).unwrap();
        ok &= res.residual < 1e-4 && res.iterations <= 5000;
        worst_end = worst_end.max(res.residual);
        max_iters = max_iters.max(res.iterations);
    }
    // n = 3: sample, perturb, keep members
    let mut rng = RngSeed(61_000).rng();
    let mut worst3 = 0.0f64;
    let mut targets = 0;
    while targets < 20 {
        let lam = random_spectrum(&mut rng, 3, 0);
        let mu = random_spectrum(&mut rng, 3, 0);
        let body = BodySpec::new(lam, mu).unwrap();
        let base = sample_body(&body, 1, RngSeed(rng.random()))
            .unwrap()
            .remove(0);
        let mut v: Vec<f64> = base
            .values()
            .iter()
            .map(|x| x * (0.05 * rng.sample::<f64, _>(StandardNormal)).exp())
            .collect();
        let c = (base.values().iter().product::<f64>() / v.iter().product::<f64>()).cbrt();
        v.iter_mut().for_each(|x| *x *= c);
        let Ok(nu) = SingularSpectrum::new(v) else {
            continue;
        };
        if !membership(&body, &nu, 1e-8).unwrap().passed() {
            continue;
        }
        let res = realize(
            &body,
            &nu,
            &RealizeConfig {
                seed: RngSeed(62_000 + targets),
                ..cfg.clone()
            },
        )
        .unwrap();
        ok &= res.residual < 1e-5;
        worst3 = worst3.max(res.residual);
        targets += 1;
    }
    let (fast, time) = within(Duration::from_secs(180), start);
    Outcome::new(
        ok && fast,
        format!(
            "n=2 interior max residual {worst_interior:.2e}, endpoints {worst_end:.2e}, max iterations {max_iters}; n=3 20 targets max residual {worst3:.2e}; {time}"
        ),
    )
}

fn non_invertible_shape() -> Outcome {
    let body = BodySpec::from_values(&[1.0, 0.0], &[1.0, 0.0]).unwrap();
    let mut mismatches = 0;
    let mut accepted = 0;
    for i in 0..=100 {
        for j in 0..=10 {
            let nu1 = 1.2 * i as f64 / 100.0;
            let nu2 = (nu1 * j as f64 / 10.0).min(nu1);
            let nu = SingularSpectrum::new(vec![nu1, nu2]).unwrap();
            let got = membership(&body, &nu, 1e-10).unwrap().passed();
            let expected = nu2 == 0.0 && nu1 <= 1.0;
            mismatches += usize::from(got != expected);
            accepted += usize::from(got);
        }
    }
    let samples = sample_body(&body, 10_000, RngSeed(7)).unwrap();
    let firsts: Vec<f64> = samples.iter().map(|s| s[0]).collect();
    let lo = firsts.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = firsts.iter().copied().fold(0.0, f64::max);
    let zero_tail = samples.iter().all(|s| s[1] == 0.0);
    // |u11|² is uniform on [0, 1]; Kolmogorov–Smirnov distance of ν₁²
    let mut sq: Vec<f64> = firsts.iter().map(|x| x * x).collect();
    sq.sort_by(f64::total_cmp);
    let m = sq.len() as f64;
    let ks = sq
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            ((k as f64 + 1.0) / m - x)
                .abs()
                .max((x - k as f64 / m).abs())
        })
        .fold(0.0, f64::max);
    let pass = mismatches == 0 && lo < 0.01 && hi > 0.99 && zero_tail;
    Outcome::new(
        pass,
        format!(
            "grid: {accepted} accepted, {mismatches} mismatches; samples: min nu1 {lo:.4}, max nu1 {hi:.4}, nu2 = 0 {zero_tail}, KS(nu1^2 vs uniform) {ks:.4}"
        ),
    )
}

fn von_neumann_layer() -> Outcome {
    let start = Instant::now();
    let mut rng = RngSeed(80_000).rng();
    let mut vn_fail = 0;
    let mut disc_fail = 0;
    let mut worst_vn = f64::INFINITY;
    for k in 0..10u64 {
        let f = random_step(&mut rng, 8, 0.3);
        let g = random_step(&mut rng, 8, 0.3);
        let model = matrix_model(&f, &g, 120, RngSeed(81_000 + k)).unwrap();
        let h = spectrum_to_step(&model.nu);
        let rep = vn_membership(&f, &g, &h, 6, 1e-6).unwrap();
        if rep.worst_slack.is_finite() {
            worst_vn = worst_vn.min(rep.worst_slack.value());
        }
        if !rep.passed() {
            vn_fail += 1;
            continue;
        }
        for n in 1..=5 {
            let body =
                BodySpec::new(discretize(&f, n).unwrap(), discretize(&g, n).unwrap()).unwrap();
            let hn = discretize(&h, n).unwrap();
            disc_fail += usize::from(!membership(&body, &hn, 1e-6).unwrap().passed());
        }
    }
    let mut comp_fail = 0;
    let mut worst_margin = f64::INFINITY;
    let mut crng = RngSeed(82_000).rng();
    for k in 0..500u64 {
        let n = crng.random_range(2..=5);
        let seed = RngSeed(83_000 + k);
        let a = if k % 4 == 0 {
            let zeros = crng.random_range(1..n);
            with_singular_values(random_spectrum(&mut crng, n, zeros).values(), seed)
        } else {
            ginibre(n, seed)
        };
        let r = crng.random_range(1..=n);
        let choices = subsets(n, r);
        let subset = &choices[crng.random_range(0..choices.len())];
        let out = schubert_compression_check(&a, subset, seed.derive(1)).unwrap();
        worst_margin = worst_margin.min(out.min_margin / out.norm);
        comp_fail += usize::from(!out.passes(1e-9 * out.norm));
    }
    let (fast, time) = within(Duration::from_secs(120), start);
    Outcome::new(
        vn_fail == 0 && disc_fail == 0 && comp_fail == 0 && fast,
        format!(
            "10 step pairs: {vn_fail} vn failures (min slack {worst_vn:.2e}), {disc_fail} discretized failures; 500 compressions: {comp_fail} below bound (min margin/norm {worst_margin:.2e}); {time}"
        ),
    )
}

fn run_bin(args: &[&str], env: Option<(&str, &std::path::Path)>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_multhorn"));
    cmd.args(args).env_remove("MULTHORN_CATALOG_DIR");
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism_and_interfaces() -> Outcome {
    let randomized: &[&[&str]] = &[
        &[
            "export-slice",
            "--lam",
            "[2,1]",
            "--mu",
            "[2,1]",
            "--count",
            "2000",
            "--seed",
            "7",
        ],
        &[
            "export-slice",
            "--lam",
            "[3,2,1]",
            "--mu",
            "[2,1,0.5]",
            "--count",
            "500",
            "--seed",
            "7",
        ],
        &[
            "export-slice",
            "--lam",
            "[1,0]",
            "--mu",
            "[1,0]",
            "--count",
            "500",
            "--seed",
            "3",
            "--format",
            "json",
        ],
        &[
            "body-sample",
            "--lam",
            "[4,2,1,0]",
            "--mu",
            "[1,1,0.5,0]",
            "--count",
            "200",
            "--seed",
            "9",
        ],
        &[
            "realize",
            "--lam",
            "[3,2,1]",
            "--mu",
            "[2,1.5,0.5]",
            "--nu",
            "[4,1.5,0.75]",
            "--seed",
            "5",
        ],
        &["triples", "--n", "5"],
    ];
    let mut nondeterministic = 0;
    let mut missing_seed = 0;
    for args in randomized {
        let (c1, a) = run_bin(args, None);
        let (c2, b) = run_bin(args, None);
        nondeterministic += usize::from(a != b || c1 != c2);
        if args.contains(&"--seed") && !String::from_utf8_lossy(&a).contains("seed") {
            missing_seed += 1;
        }
    }
    let f1 = r#"{"breakpoints":[0,1],"values":[1]}"#;
    let f2 = r#"{"breakpoints":[0,1],"values":[2]}"#;
    let battery: &[(&[&str], i32)] = &[
        (&["triples", "--n", "3"], 0),
        (
            &[
                "body-member",
                "--lam",
                "[2,1]",
                "--mu",
                "[2,1]",
                "--nu",
                "[3,1.3333333333333333]",
            ],
            0,
        ),
        (
            &[
                "body-member",
                "--lam",
                "[2,1]",
                "--mu",
                "[2,1]",
                "--nu",
                "[5,0.8]",
            ],
            1,
        ),
        (
            &[
                "body-member",
                "--lam",
                "[1,0]",
                "--mu",
                "[1,0]",
                "--nu",
                "[0.5,0.1]",
            ],
            1,
        ),
        (
            &[
                "body-member",
                "--lam",
                "[2,1]",
                "--mu",
                "[2,1]",
                "--nu",
                "[2,1]",
                "--invertible",
            ],
            1,
        ),
        (
            &[
                "body-member",
                "--lam",
                "[2,1",
                "--mu",
                "[2,1]",
                "--nu",
                "[1,1]",
            ],
            2,
        ),
        (
            &[
                "body-member",
                "--lam",
                "[2,1]",
                "--mu",
                "[2,1]",
                "--nu",
                "[1,1]",
                "--tol",
                "-1",
            ],
            2,
        ),
        (
            &[
                "check-product",
                "--a",
                "[[1,0],[0,0]]",
                "--b",
                "[[0,0],[0,1]]",
            ],
            0,
        ),
        (
            &[
                "check-product",
                "--a",
                "[[[1,0],[0,1]],[[0,0],[2,0]]]",
                "--b",
                "[[1,1],[0,1]]",
            ],
            0,
        ),
        (
            &[
                "realize", "--lam", "[2,1]", "--mu", "[2,1]", "--nu", "[4,1]",
            ],
            0,
        ),
        (
            &[
                "realize", "--lam", "[2,1]", "--mu", "[2,1]", "--nu", "[5,0.8]",
            ],
            1,
        ),
        (
            &["vn-member", "--f", f1, "--g", f1, "--h", f1, "--max-n", "4"],
            0,
        ),
        (
            &["vn-member", "--f", f1, "--g", f1, "--h", f2, "--max-n", "1"],
            1,
        ),
        (
            &[
                "vn-member",
                "--f",
                f1,
                "--g",
                f1,
                "--h",
                f1,
                "--max-n",
                "12",
            ],
            2,
        ),
        (
            &[
                "discretize",
                "--s",
                r#"{"breakpoints":["0","1/2","1"],"values":[2,1]}"#,
                "--n",
                "1",
            ],
            0,
        ),
        (
            &[
                "discretize",
                "--s",
                r#"{"breakpoints":["0","1/2"],"values":[2]}"#,
                "--n",
                "1",
            ],
            2,
        ),
        (&["export-slice", "--lam", "[1]", "--mu", "[1]"], 2),
        (&["no-such-command"], 2),
    ];
    let mut wrong_codes = Vec::new();
    for (args, expected) in battery {
        let (code, _) = run_bin(args, None);
        if code != *expected {
            wrong_codes.push(format!("{} -> {code} (want {expected})", args[0]));
        }
    }
    // emitted JSON is accepted by the matching reader
    let (_, cat_json) = run_bin(&["triples", "--n", "4"], None);
    let round_trip = TripleCatalog::from_json(&String::from_utf8_lossy(&cat_json))
        .is_ok_and(|c| c.len() == TripleCatalog::enumerate(4).unwrap().len());
    let pass = nondeterministic == 0 && missing_seed == 0 && wrong_codes.is_empty() && round_trip;
    Outcome::new(
        pass,
        format!(
            "{} randomized commands repeated: {nondeterministic} differed, {missing_seed} without seed; exit-code battery {}/{} correct{}; catalog JSON round trip {round_trip}",
            randomized.len(),
            battery.len() - wrong_codes.len(),
            battery.len(),
            if wrong_codes.is_empty() { String::new() } else { format!(" [{}]", wrong_codes.join("; ")) }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("catalog correctness", catalog_correctness),
        ("additive oracle gate", additive_oracle),
        ("multiplicative inequality validity", product_inequalities),
        ("sampling inside membership", sampling_inside_membership),
        ("invertible-case equivalence", invertible_equivalence),
        ("constructive realization", realization),
        ("non-invertible body shape", non_invertible_shape),
        ("von Neumann layer consistency", von_neumann_layer),
        ("determinism and interfaces", determinism_and_interfaces),
    ];
    let mut failed = 0;
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        failed += usize::from(!outcome.pass);
        println!(
            "[{}] criterion {}: {name} ({:.1}s): {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            idx + 1,
            start.elapsed().as_secs_f64(),
            outcome.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
