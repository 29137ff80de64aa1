//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! run with `--nocapture` to see them.

use std::time::{Duration, Instant};

use knotted_tori::census::io::{from_csv, from_json, to_csv, to_json};
use knotted_tori::census::mutation::{seeded_mutations, Mutation};
use knotted_tori::census::{consistency_report_with, enumerate_domain};
use knotted_tori::cli::parse_and_dispatch;
use knotted_tori::fcs::{fcs_contains, fcs_line_witness};
use knotted_tori::rank::RankContext;
use knotted_tori::{
    consistency_report, knotted_tori_infinite, knotted_tori_infinite_via_components, run_census,
    Criteria, DefaultProvider, Finiteness, FinitenessVerdict, GridBounds, LatticePoint,
    LineEquation, RankInterval,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid() -> GridBounds {
    GridBounds::auto(1..=8, 1..=48).unwrap()
}

fn cli(args: &[&str]) -> knotted_tori::cli::Outcome {
    parse_and_dispatch(std::iter::once("knotted-tori").chain(args.iter().copied()))
}

fn torus_1_5_10() -> Outcome {
    let o = cli(&["tori", "--p", "1", "--q", "5", "--m", "10"]);
    ensure(o.code == 0 && o.stdout == "finite\n", || {
        format!("got {o:?}")
    })?;
    let best = (0..20)
        .map(|_| {
            let start = Instant::now();
            let v = knotted_tori_infinite(1, 5, 10);
            let elapsed = start.elapsed();
            assert_eq!(v, Ok(FinitenessVerdict::Finite));
            elapsed
        })
        .min()
        .unwrap();
    ensure(best < Duration::from_millis(1), || format!("took {best:?}"))
}

fn direct_matches_components() -> Outcome {
    let start = Instant::now();
    let triples = enumerate_domain(&grid());
    ensure(!triples.is_empty(), || "empty domain".into())?;
    let mismatches: Vec<_> = triples
        .iter()
        .filter(|t| {
            let direct = knotted_tori_infinite(t.p, t.q, t.m).map(|v| v.finiteness());
            let via = knotted_tori_infinite_via_components(t.p, t.q, t.m).map(|v| v.finiteness());
            direct.is_err() || direct != via
        })
        .collect();
    let elapsed = start.elapsed();
    ensure(mismatches.is_empty(), || {
        format!("{} mismatches, first {}", mismatches.len(), mismatches[0])
    })?;
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })
}

fn brute_witness(i: i64, j: i64, a: i64, b: i64, c: i64) -> Option<LatticePoint> {
    for x in 1..=c {
        for y in 1..=c {
            if a * x + b * y > c {
                break;
            }
            let p = LatticePoint::new(x, y);
            if a * x + b * y == c && fcs_contains(i, j, p) {
                return Some(p);
            }
        }
    }
    None
}

fn line_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let (i, j) = (rng.random_range(1..=40), rng.random_range(1..=40));
        let (a, b, c) = (
            rng.random_range(1..=20),
            rng.random_range(1..=20),
            rng.random_range(1..=200),
        );
        let got = fcs_line_witness(i, j, &LineEquation::new(a, b, c).unwrap());
        let want = brute_witness(i, j, a, b, c);
        ensure(got == want, || {
            format!("(i,j,a,b,c)=({i},{j},{a},{b},{c}): {got:?} vs {want:?}")
        })?;
    }
    Ok(())
}

fn symmetry_and_parity() -> Outcome {
    for i in 3..=6 {
        for j in 3..=6 {
            for x in 1..=64 {
                for y in 1..=64 {
                    let c = fcs_contains(i, j, LatticePoint::new(x, y));
                    ensure(c == fcs_contains(j, i, LatticePoint::new(y, x)), || {
                        format!("reflection at i={i} j={j} ({x},{y})")
                    })?;
                    ensure(c == fcs_contains(i + 2, j, LatticePoint::new(x, y)), || {
                        format!("parity at i={i} j={j} ({x},{y})")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn table_fixtures() -> Outcome {
    let pt = LatticePoint::new;
    let cases = [
        (4, 4, pt(1, 1), true),
        (5, 4, pt(1, 1), true),
        (4, 5, pt(1, 1), true),
        (5, 5, pt(1, 1), true),
        (3, 4, pt(2, 3), true),
        (4, 4, pt(2, 3), false),
        (3, 3, pt(1, 2), true),
        (4, 5, pt(2, 1), false),
    ];
    for (i, j, p, want) in cases {
        ensure(fcs_contains(i, j, p) == want, || {
            format!("FCS({i},{j}) at {p}: expected {want}")
        })?;
    }
    Ok(())
}

fn chain_consistency() -> Outcome {
    let report = consistency_report(&grid(), &DefaultProvider::default());
    ensure(report.chain_violations.is_empty(), || {
        format!(
            "{} chain violations, first {:?}",
            report.chain_violations.len(),
            report.chain_violations[0]
        )
    })?;
    ensure(report.vacuity_failures.is_empty(), || {
        format!("middle condition fired at {:?}", report.vacuity_failures)
    })
}

fn verdict_rank_compatibility() -> Outcome {
    let c = Criteria::standard();
    let d = DefaultProvider::default();
    let ctx = RankContext::new(&c, &d);
    for t in enumerate_domain(&grid()) {
        let detail = ctx
            .tori_rank_detail(t.p, t.q, t.m)
            .map_err(|e| format!("{t}: {e}"))?;
        let ok = match detail.verdict.finiteness() {
            Finiteness::Infinite => detail.tightened.lo() >= 1,
            Finiteness::Finite => detail.tightened == RankInterval::ZERO,
        };
        ensure(ok, || {
            format!("{t}: {:?} with rank {}", detail.verdict, detail.tightened)
        })?;
    }
    Ok(())
}

fn mutation_sensitivity() -> Outcome {
    let muts = seeded_mutations();
    let clause = muts
        .iter()
        .filter(|m| !matches!(m, Mutation::Thresholds(_)))
        .count();
    ensure(clause == 5 && muts.len() == 8, || {
        format!("seeded set has {clause} clause edits of {}", muts.len())
    })?;
    for m in &muts {
        let c = m.apply();
        let d = DefaultProvider::new(c.clone());
        let report = consistency_report_with(&RankContext::new(&c, &d), &grid());
        ensure(report.failure_count() > 0, || format!("undetected: {m}"))?;
        if !matches!(m, Mutation::Thresholds(_)) {
            ensure(!report.equivalence_failures.is_empty(), || {
                format!("no equivalence failure: {m}")
            })?;
        }
    }
    Ok(())
}

fn io_round_trip() -> Outcome {
    let bounds = GridBounds::auto(1..=4, 1..=30).unwrap();
    let d = DefaultProvider::default();
    let first = run_census(&bounds, &d).map_err(|e| e.to_string())?;
    let second = run_census(&bounds, &d).map_err(|e| e.to_string())?;
    let csv = to_csv(&first).map_err(|e| e.to_string())?;
    let json = to_json(&first).map_err(|e| e.to_string())?;
    ensure(
        csv == to_csv(&second).unwrap() && json == to_json(&second).unwrap(),
        || "two runs differ".into(),
    )?;
    ensure(from_csv(&csv).map_err(|e| e.to_string())? == first, || {
        "csv round trip".into()
    })?;
    ensure(
        from_json(&json).map_err(|e| e.to_string())? == first,
        || "json round trip".into(),
    )?;
    let golden_csv = include_str!("golden/census_p1-4_q1-30.csv");
    let golden_json = include_str!("golden/census_p1-4_q1-30.json");
    ensure(csv == golden_csv, || "csv differs from golden file".into())?;
    ensure(format!("{json}\n") == golden_json, || {
        "json differs from golden file".into()
    })?;
    let o = cli(&["census", "--p", "1..4", "--q", "1..30", "--format", "csv"]);
    ensure(o.stdout == golden_csv, || {
        "cli csv differs from golden file".into()
    })
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("S^1 x S^5 in S^10 is finite", torus_1_5_10),
        (
            "direct and component verdicts agree",
            direct_matches_components,
        ),
        ("FCS line oracle", line_oracle),
        ("FCS symmetry and parity", symmetry_and_parity),
        ("FCS clause fixtures", table_fixtures),
        ("exact sequence consistency", chain_consistency),
        ("verdict-rank compatibility", verdict_rank_compatibility),
        ("mutation sensitivity", mutation_sensitivity),
        ("I/O round trip", io_round_trip),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {} {name}: PASS", n + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({e})", n + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
