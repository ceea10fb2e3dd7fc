//! End-to-end acceptance suite. Each test exercises one numbered
//! criterion against the bundled sample graphs and prints a single
//! pass or fail line (visible with `--nocapture`).

use gpgrowth::{cmd_conjgrowth, cmd_growth, cmd_verify, GrowthMode};
use gpgrowth_core::analysis::{estimate_rate, rc_necklace, rc_sigma, SeriesFn, DEFAULT_TOL};
use gpgrowth_core::formulas::GrowthEngine;
use gpgrowth_core::graph::{GraphSpec, VertexSubset};
use gpgrowth_core::oracle::{
    conjugacy_canonicalize, enumerate_ball, enumerate_conjugacy, enumerate_transversal,
    GroupWord, Syllable, VertexOrder, DEFAULT_CLOSURE_BUDGET,
};
use gpgrowth_core::series::{neck, ExactRational, TruncatedSeries};
use gpgrowth_core::RationalSeries;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::Instant;

fn sample(name: &str) -> GraphSpec {
    let path = format!("{}/../../samples/{}.json", env!("CARGO_MANIFEST_DIR"), name);
    let text = std::fs::read_to_string(&path).unwrap();
    GraphSpec::from_json(&text).unwrap()
}

fn report(criterion: &str, result: Result<(), String>) {
    match result {
        Ok(()) => println!("{}: pass", criterion),
        Err(msg) => {
            println!("{}: FAIL ({})", criterion, msg);
            panic!("{}: {}", criterion, msg);
        }
    }
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

#[test]
fn criterion_01_path4_standard_growth() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let g = sample("path4");
        let out = cmd_growth(&g, 20, GrowthMode::Rational).map_err(|e| e.to_string())?;
        let expected = RationalSeries::from_i64(&[1, 2, 1], &[1, -2]).unwrap();
        ensure(
            out.report.closed_form.as_deref() == Some(expected.to_string().as_str()),
            "closed form mismatch",
        )?;
        let expansion = expected.expand(20).unwrap();
        ensure(out.report.coefficients == expansion.coeffs(), "expansion mismatch")?;
        ensure(start.elapsed().as_secs_f64() < 1.0, "runtime over 1 s")
    };
    report("criterion 1 (path4 standard growth closed form)", run());
}

#[test]
fn criterion_02_path4_conjugacy_growth() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let g = sample("path4");
        let out = cmd_conjgrowth(&g, 20).map_err(|e| e.to_string())?;
        let rational = RationalSeries::from_i64(&[1, 4, 3, -2, -3], &[1, 0, -1])
            .unwrap()
            .expand(20)
            .unwrap();
        let neck_arg = RationalSeries::from_i64(&[0, 0, 2], &[1, -1])
            .unwrap()
            .expand(20)
            .unwrap();
        let expected = rational.add(&neck(&neck_arg).unwrap());
        ensure(out.report.coefficients == expected.coeffs(), "coefficient mismatch")?;
        ensure(start.elapsed().as_secs_f64() < 1.0, "runtime over 1 s")
    };
    report("criterion 2 (path4 conjugacy growth vs closed form)", run());
}

#[test]
fn criterion_03_oracle_equivalence() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        for (name, n) in [("path4", 7), ("dinf", 10), ("f2", 6), ("pentagon", 6)] {
            let g = sample(name);
            let out = cmd_verify(&g, n, DEFAULT_CLOSURE_BUDGET).map_err(|e| e.to_string())?;
            ensure(out.all_match, &format!("{} mismatch at n={}", name, n))?;
        }
        ensure(start.elapsed().as_secs_f64() < 120.0, "runtime over 2 min")
    };
    report("criterion 3 (formula vs oracle on four samples)", run());
}

#[test]
fn criterion_04_dihedral_closed_forms() {
    let run = || -> Result<(), String> {
        let g = sample("dinf");
        let engine = GrowthEngine::new(&g, 24);
        let sigma = engine.sigma(g.full_set()).map_err(|e| e.to_string())?;
        let expected_sigma = RationalSeries::from_i64(&[1, 1], &[1, -1]).unwrap();
        ensure(sigma.as_rational() == Some(&expected_sigma), "sigma closed form mismatch")?;
        let conj = engine.sigma_conj(g.full_set()).map_err(|e| e.to_string())?;
        let expected_conj = RationalSeries::from_i64(&[1, 2, 0, -2], &[1, 0, -1])
            .unwrap()
            .expand(24)
            .unwrap();
        ensure(conj == expected_conj, "sigma_conj expansion mismatch")?;
        let ball = enumerate_ball(&g, 12).map_err(|e| e.to_string())?;
        let classes =
            enumerate_conjugacy(&g, 12, DEFAULT_CLOSURE_BUDGET).map_err(|e| e.to_string())?;
        let sigma_exp = expected_sigma.expand(12).unwrap();
        for n in 0..=12 {
            ensure(sigma_exp.coeff(n) == BigInt::from(ball[n]), "oracle ball mismatch")?;
            ensure(expected_conj.coeff(n) == BigInt::from(classes[n]), "oracle class mismatch")?;
        }
        Ok(())
    };
    report("criterion 4 (infinite dihedral closed forms)", run());
}

fn rational_mul(a: &[ExactRational], b: &[ExactRational], cap: usize) -> Vec<ExactRational> {
    let mut out = vec![ExactRational::zero(); cap + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if i + j <= cap {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

#[test]
fn criterion_05_necklace_identity_and_bounds() {
    let run = || -> Result<(), String> {
        for k in [1usize, 2, 3, 5] {
            let f = TruncatedSeries::monomial(k, 30);
            let lhs = neck(&f).unwrap();
            let mut den = vec![0i64; k + 1];
            den[0] = 1;
            den[k] = -1;
            let mut num = vec![0i64; k + 1];
            num[k] = 1;
            let rhs = RationalSeries::from_i64(&num, &den).unwrap().expand(30).unwrap();
            ensure(lhs == rhs, &format!("neck(z^{}) identity fails", k))?;
        }
        let mut rng = StdRng::seed_from_u64(11);
        let cap = 12;
        for _ in 0..20 {
            let mut coeffs = vec![0i64];
            for _ in 0..cap {
                coeffs.push(rng.gen_range(0..=4));
            }
            let f = TruncatedSeries::from_i64(&coeffs, cap);
            let n = neck(&f).unwrap();
            let fr: Vec<ExactRational> =
                f.coeffs().iter().map(|c| ExactRational::from(c.clone())).collect();
            let mut lower = vec![ExactRational::zero(); cap + 1];
            let mut upper = vec![ExactRational::zero(); cap + 1];
            let mut power = fr.clone();
            for exp in 1..=cap {
                let inv = ExactRational::new(BigInt::one(), BigInt::from(exp));
                for m in 0..=cap {
                    lower[m] += &power[m] * &inv;
                    upper[m] += &power[m];
                }
                power = rational_mul(&power, &fr, cap);
            }
            for m in 1..=cap {
                let nm = ExactRational::from(n.coeff(m));
                ensure(lower[m] <= nm && nm <= upper[m], "coefficient bound violated")?;
            }
        }
        Ok(())
    };
    report("criterion 5 (necklace identity and coefficient bounds)", run());
}

#[test]
fn criterion_06_pivot_independence() {
    let run = || -> Result<(), String> {
        for name in ["path4", "dinf", "f2", "complete2", "star4", "pentagon"] {
            let g = sample(name);
            let reference = GrowthEngine::new(&g, 16);
            let ref_sigma = reference
                .sigma(g.full_set())
                .map_err(|e| e.to_string())?
                .as_rational()
                .cloned();
            let ref_conj = reference.sigma_conj(g.full_set()).map_err(|e| e.to_string())?;
            for v in 0..g.vertex_count() {
                let engine = GrowthEngine::with_top_pivot(&g, 16, v);
                let sigma = engine
                    .sigma(g.full_set())
                    .map_err(|e| e.to_string())?
                    .as_rational()
                    .cloned();
                ensure(sigma == ref_sigma, &format!("{} sigma differs at pivot {}", name, v))?;
                let conj = engine.sigma_conj(g.full_set()).map_err(|e| e.to_string())?;
                ensure(conj == ref_conj, &format!("{} sigma_conj differs at pivot {}", name, v))?;
            }
        }
        Ok(())
    };
    report("criterion 6 (pivot independence on all samples)", run());
}

#[test]
fn criterion_07_mobius_round_trip() {
    let run = || -> Result<(), String> {
        let g = sample("pentagon");
        let engine = GrowthEngine::new(&g, 12);
        for s in g.full_set().subsets() {
            let mut total = TruncatedSeries::zero(12);
            for sub in s.subsets() {
                total = total.add(&engine.mobius_conj(sub).map_err(|e| e.to_string())?);
            }
            let direct = engine.sigma_conj(s).map_err(|e| e.to_string())?;
            ensure(total == direct, &format!("resummation fails for subset {:?}", s))?;
        }
        Ok(())
    };
    report("criterion 7 (Mobius inversion round trip, pentagon)", run());
}

#[test]
fn criterion_08_rates_at_desk_scale() {
    let run = || -> Result<(), String> {
        let path4 = sample("path4");
        let rc = rc_sigma(&path4, DEFAULT_TOL)
            .map_err(|e| e.to_string())?
            .ok_or("rc_sigma returned polynomial")?;
        ensure((rc - 0.5).abs() <= 1e-9, "rc_sigma(path4) not 0.5")?;
        let neck_arg = RationalSeries::from_i64(&[0, 0, 2], &[1, -1]).unwrap();
        let rc_neck =
            rc_necklace(&SeriesFn::Rational(neck_arg), DEFAULT_TOL).map_err(|e| e.to_string())?;
        ensure((rc_neck - 0.5).abs() <= 1e-9, "rc_necklace not 0.5")?;
        let bands = [("path4", 1.85, 2.05), ("f2", 2.8, 3.05)];
        for (name, lo, hi) in bands {
            let g = sample(name);
            let engine = GrowthEngine::new(&g, 32);
            let sigma = engine
                .sigma(g.full_set())
                .and_then(|s| s.expand(32))
                .map_err(|e| e.to_string())?;
            let conj = engine.sigma_conj(g.full_set()).map_err(|e| e.to_string())?;
            let sr = estimate_rate(&sigma, 8).value;
            let cr = estimate_rate(&conj, 8).value;
            ensure(
                (lo..=hi).contains(&sr),
                &format!("{} sigma rate {} outside [{}, {}]", name, sr, lo, hi),
            )?;
            ensure(
                (lo..=hi).contains(&cr),
                &format!("{} conj rate {} outside [{}, {}]", name, cr, lo, hi),
            )?;
            let full_rate = cr;
            for s in g.full_set().subsets() {
                if s.is_empty() {
                    continue;
                }
                let (sub, _) = g.induced(s);
                let sub_engine = GrowthEngine::new(&sub, 32);
                let sub_conj =
                    sub_engine.sigma_conj(sub.full_set()).map_err(|e| e.to_string())?;
                let sub_rate = estimate_rate(&sub_conj, 8).value;
                ensure(
                    sub_rate <= full_rate + 0.05,
                    &format!("{} monotonicity fails for subset {:?}", name, s),
                )?;
            }
        }
        Ok(())
    };
    report("criterion 8 (radii of convergence and rate bands)", run());
}

#[test]
fn criterion_09_admissibility_identities() {
    let run = || -> Result<(), String> {
        for name in ["path4", "pentagon"] {
            let g = sample(name);
            let engine = GrowthEngine::new(&g, 8);
            for v in 0..g.vertex_count() {
                let full = g.full_set();
                let rest = full.remove(v);
                let lk = g.neighbours(v);
                let sigma_rest = engine
                    .sigma(rest)
                    .map_err(|e| e.to_string())?
                    .as_rational()
                    .cloned()
                    .ok_or("no rational form")?;
                let sigma_lk = engine
                    .sigma(lk)
                    .map_err(|e| e.to_string())?
                    .as_rational()
                    .cloned()
                    .ok_or("no rational form")?;
                let f_u = engine
                    .transversal_series(full, v, VertexSubset::full(0))
                    .map_err(|e| e.to_string())?;
                // sigma_{V\{v}} = sigma_{Lk(v)} * (F_U + 1), checked as
                // exact rational functions against the independently
                // computed transversal quotient.
                let f_u_plus_one = sigma_rest.div(&sigma_lk).map_err(|e| e.to_string())?;
                let product = sigma_lk.mul(&f_u_plus_one);
                ensure(
                    product == sigma_rest,
                    &format!("{} rational identity fails at pivot {}", name, v),
                )?;
                ensure(
                    f_u_plus_one.sub(&RationalSeries::one()).expand(8).unwrap() == f_u,
                    &format!("{} transversal quotient mismatch at pivot {}", name, v),
                )?;
                let counts = enumerate_transversal(&g, v, 8).map_err(|e| e.to_string())?;
                for n in 1..=8 {
                    ensure(
                        f_u.coeff(n) == BigInt::from(counts[n - 1]),
                        &format!("{} transversal count mismatch at pivot {} n={}", name, v, n),
                    )?;
                }
            }
        }
        Ok(())
    };
    report("criterion 9 (admissible transversal identities)", run());
}

#[test]
fn criterion_10_canonicalizer_soundness() {
    let run = || -> Result<(), String> {
        let g = sample("path4");
        let order = VertexOrder::declaration(g.vertex_count());
        let mut rng = StdRng::seed_from_u64(7);
        let random_word = |rng: &mut StdRng, len: usize| -> GroupWord {
            let syllables: Vec<Syllable> = (0..len)
                .map(|_| Syllable { vertex: rng.gen_range(0..4), elem: 1 })
                .collect();
            GroupWord::from_syllables(&g, &syllables)
        };
        for _ in 0..500 {
            let w_len = rng.gen_range(0..=6);
            let c_len = rng.gen_range(0..=3);
            let w = random_word(&mut rng, w_len);
            let c = random_word(&mut rng, c_len);
            let conjugated = c.concat(&w, &g).concat(&c.inverse(&g), &g);
            let lhs = conjugacy_canonicalize(&g, &conjugated, &order, DEFAULT_CLOSURE_BUDGET)
                .map_err(|e| e.to_string())?;
            let rhs = conjugacy_canonicalize(&g, &w, &order, DEFAULT_CLOSURE_BUDGET)
                .map_err(|e| e.to_string())?;
            ensure(lhs.word == rhs.word, "conjugates canonicalize differently")?;
        }
        Ok(())
    };
    report("criterion 10 (canonicalizer constant on conjugacy classes)", run());
}

// Keep VertexSubset in scope for the Debug formatting used in messages.
#[allow(dead_code)]
fn _subset_debug(s: VertexSubset) -> String {
    format!("{:?}", s)
}
