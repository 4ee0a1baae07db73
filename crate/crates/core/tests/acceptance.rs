//! The ten acceptance criteria, run in order with one status line each.
//! Runs without the test harness so the lines are always printed.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use vpd_core::bvpd;
use vpd_core::diagram::{Diagram, DiagramKind, Tile};
use vpd_core::mvpd;
use vpd_core::pipedream::{self, PipeDreamIndex};
use vpd_core::support::{self, construct_up, Conj13Mode, StepOp};
use vpd_core::sweep::{self, CheckKind, SweepOptions};
use vpd_core::{Monomial, Permutation, Polynomial};

type Outcome = Result<(), String>;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn sweep_all(checks: &[CheckKind], ns: impl IntoIterator<Item = usize> + Clone, ifw: bool) -> Outcome {
    let options = SweepOptions {
        inverse_fireworks_only: ifw,
        ..SweepOptions::default()
    };
    for &check in checks {
        for n in ns.clone() {
            let report = sweep::run(check, n, &options).map_err(|e| e.to_string())?;
            ensure(report.passed() && report.checked > 0, || report.to_string())?;
        }
    }
    Ok(())
}

fn golden_2413() -> Outcome {
    let w = p("2413");
    let pds = pipedream::pd_set(&w).map_err(|e| e.to_string())?;
    ensure(pds.len() == 3, || format!("{} pipe dreams", pds.len()))?;
    let g = pipedream::grothendieck(&w).map_err(|e| e.to_string())?;
    ensure(g.to_string() == "x1*x2^2 + x1^2*x2 - x1^2*x2^2", || g.to_string())?;

    // Expand the three signed products by hand.
    let n = 4;
    let f = |i: usize, j: usize| {
        let (x, y) = (Polynomial::x(n, i), Polynomial::y(n, j));
        &(&x + &y) - &(&x * &y)
    };
    let prod = |cells: &[(usize, usize)]| {
        cells.iter().fold(Polynomial::one(n), |acc, &(i, j)| &acc * &f(i, j))
    };
    let expected = &(&prod(&[(1, 1), (2, 1), (2, 2)]) + &prod(&[(1, 1), (2, 1), (1, 3)]))
        - &prod(&[(1, 1), (2, 1), (2, 2), (1, 3)]);
    let d = pipedream::double_grothendieck(&w).map_err(|e| e.to_string())?;
    ensure(d == expected, || format!("double: {d}\nexpected: {expected}"))?;
    ensure(d.specialize_y_zero() == g, || "y = 0 does not recover the single".into())
}

fn golden_3142() -> Outcome {
    let w = p("3142").inverse();
    let via_phi = mvpd::mvpd_set(&w).map_err(|e| e.to_string())?;
    let direct = mvpd::enumerate_direct(&w).map_err(|e| e.to_string())?;
    ensure(via_phi.len() == 3, || format!("{} members", via_phi.len()))?;
    let a: BTreeSet<String> = via_phi.members.iter().map(Diagram::render_text).collect();
    let b: BTreeSet<String> = direct.members.iter().map(Diagram::render_text).collect();
    ensure(a == b, || format!("image {a:?}\ndirect {b:?}"))?;
    let brute = common::brute_mvpds(4, &w.alpha_prime().entries);
    ensure(a == brute, || format!("brute force {brute:?}"))
}

fn golden_165234() -> Outcome {
    let w = p("165234");
    let bs = bvpd::enumerate_bvpd(&w).map_err(|e| e.to_string())?;
    ensure(bs.len() == 6, || format!("{} BVPDs", bs.len()))?;
    let top = bvpd::top_grothendieck_via_bvpd(&w).map_err(|e| e.to_string())?;
    // The same six monomials as listed, in graded-lex order.
    let listed = "x1^2*x2^4*x3^3 + x1^3*x2^3*x3^3 + x1^3*x2^4*x3^2 + x1^4*x2^2*x3^3 + x1^4*x2^3*x3^2 + x1^4*x2^4*x3";
    ensure(top.to_string() == listed, || top.to_string())?;
    let g = pipedream::grothendieck(&w).map_err(|e| e.to_string())?;
    let raj = g.total_degree().map_err(|e| e.to_string())? as usize;
    let component = g.top_component().map_err(|e| e.to_string())?;
    let signed = if (raj - w.length()) % 2 == 0 { top.clone() } else { -&top };
    ensure(component == signed, || format!("top component {component}"))
}

fn lemma46_sweep() -> Outcome {
    sweep_all(&[CheckKind::Lemma46], 1..=5, false)?;
    // Recount directly from the tiles.
    for w in Permutation::all(5) {
        for m in mvpd::mvpd_set(&w).map_err(|e| e.to_string())?.members {
            let total = m.weighty_cells().len() + m.count(Tile::Bump) + m.count(Tile::ElbowSE);
            ensure(total == w.r_stat(), || format!("{w}:\n{}", m.render_text()))?;
        }
    }
    Ok(())
}

fn raj_sweeps() -> Outcome {
    sweep_all(&[CheckKind::Prop25, CheckKind::Cor26], 1..=5, false)?;
    let index = PipeDreamIndex::build(5).map_err(|e| e.to_string())?;
    for w in Permutation::all(5) {
        let raj = index.raj(&w).map_err(|e| e.to_string())?;
        ensure((raj == w.maj()) == w.is_fireworks(), || format!("{w}: raj {raj}"))?;
        let inv = index.raj(&w.inverse()).map_err(|e| e.to_string())?;
        ensure(raj == inv, || format!("{w}: {raj} vs {inv}"))?;
    }
    Ok(())
}

/// Column of `j` below `i` down to the first non-Cross row.
fn i_prime(m: &Diagram, i: usize, j: usize) -> usize {
    (i + 1..=m.n()).find(|&r| m.tile(r, j) != Tile::Cross).unwrap()
}

fn constructor() -> Outcome {
    let mut shapes: BTreeMap<String, Vec<Vec<(usize, usize)>>> = BTreeMap::new();
    let mut count = 0;
    for w in Permutation::all(5).into_iter().filter(Permutation::is_inverse_fireworks) {
        let code = w.alpha_prime().entries;
        for m in mvpd::mvpd_set(&w).map_err(|e| e.to_string())?.members {
            if mvpd::is_top(&m, &w).map_err(|e| e.to_string())? {
                continue;
            }
            count += 1;
            let cert = construct_up(&m, &w).map_err(|e| format!("{w}: {e}\n{}", m.render_text()))?;
            let out = cert.output_diagram();
            let fail = |why: &str| format!("{w} {why}:\n{}", m.render_text());
            ensure(mvpd::is_member(out, &w), || fail("output left the set"))?;
            ensure(out.weight() == m.weight().times_x(cert.gained_row), || fail("weight"))?;
            ensure(cert.droop_count() <= cert.bound, || fail("bound"))?;
            let bound: usize = m.weighty_cells().iter().map(|c| c.1).sum();
            ensure(cert.bound == bound, || fail("bound value"))?;
            let mut prev = m.clone();
            let mut picks = Vec::new();
            for (step, next) in cert.steps.iter().zip(&cert.trail) {
                let oracle = common::naive_trace(&common::Grid::parse(&next.render_text()));
                ensure(oracle.is_some_and(|t| t.top == code), || fail("oracle trace"))?;
                ensure(mvpd::is_member(next, &w), || fail("step left the set"))?;
                if step.op == StepOp::DroopPrime {
                    let [i, j] = step.cell;
                    let ip = i_prime(&prev, i, j);
                    let mut expected = prev.weighty_cells();
                    expected.remove(&(i, j));
                    expected.remove(&(ip, j + 1));
                    expected.insert((ip, j));
                    ensure(next.weighty_cells() == expected, || fail("ledger"))?;
                    picks.push((i, j));
                }
                prev = next.clone();
            }
            if w.inverse().to_string() == "14253" {
                shapes.entry(format!("{}", cert.gained_row)).or_default().push(picks);
            }
        }
    }
    ensure(count > 0, || "no inputs".into())?;
    let nested = shapes.get("3").is_some_and(|v| v.iter().any(|s| s == &[(1, 1), (2, 2)]));
    ensure(nested, || format!("14253 shapes: {shapes:?}"))?;
    let w = p("14253").inverse();
    let m = Diagram::parse_text(DiagramKind::Mvpd, 5, "r-JRJ\nJR-J.\n-J...\n.....\n.....")
        .map_err(|e| e.to_string())?;
    let cert = construct_up(&m, &w).map_err(|e| e.to_string())?;
    ensure(cert.droop_count() >= 2 && cert.gained_row == 3, || format!("{:?}", cert.steps))
}

fn support_consistent(w: &Permutation, report: &support::SupportReport) -> Outcome {
    ensure(report.passed(), || format!("{w}: {:?}", report.failures))?;
    let support = pipedream::grothendieck(w).map_err(|e| e.to_string())?.support();
    let by_name: BTreeMap<String, &Monomial> = support.iter().map(|m| (m.to_string(), m)).collect();
    for wit in &report.witnesses {
        let m = by_name.get(&wit.monomial).ok_or_else(|| format!("{w}: {} not in support", wit.monomial))?;
        ensure(support.contains(&m.times_x(wit.row)), || format!("{w}: {} x{}", wit.monomial, wit.row))?;
    }
    Ok(())
}

fn conjectures() -> Outcome {
    for w in Permutation::all(4) {
        let direct = support::check_conj13(&w, Conj13Mode::Direct).map_err(|e| e.to_string())?;
        support_consistent(&w, &direct)?;
        let c12 = support::check_conj12(&w).map_err(|e| e.to_string())?;
        ensure(c12.passed(), || format!("{w}: {:?}", c12.failures))?;
    }
    for w in Permutation::all(5).into_iter().filter(Permutation::is_inverse_fireworks) {
        for mode in [Conj13Mode::Direct, Conj13Mode::Constructive] {
            let report = support::check_conj13(&w, mode).map_err(|e| e.to_string())?;
            support_consistent(&w, &report)?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: Vec<(&str, u64, Box<dyn Fn() -> Outcome>)> = vec![
        ("2413 single and double polynomials", 1, Box::new(golden_2413)),
        ("3142 inverse: image and direct MVPD sets", 1, Box::new(golden_3142)),
        (
            "pipe dream and MVPD sums agree, n <= 5",
            30,
            Box::new(|| sweep_all(&[CheckKind::Eq1VsCor37], 1..=5, false)),
        ),
        (
            "phi bijection on S5",
            30,
            Box::new(|| sweep_all(&[CheckKind::Prop36], 1..=5, false)),
        ),
        ("165234 BVPDs and top component", 10, Box::new(golden_165234)),
        (
            "BVPD theorems for inverse fireworks in S6",
            300,
            Box::new(|| sweep_all(&[CheckKind::Thm43, CheckKind::Thm44, CheckKind::Prop49], 1..=6, true)),
        ),
        ("weighty + Bump + ElbowSE = r on S5", 30, Box::new(lemma46_sweep)),
        ("raj against maj and inverse on S5", 30, Box::new(raj_sweeps)),
        ("construct_up on inverse fireworks in S5", 120, Box::new(constructor)),
        ("support conjectures", 120, Box::new(conjectures)),
    ];
    let mut failed = Vec::new();
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(took <= Duration::from_secs(*budget), || format!("took {took:?}, budget {budget} s"))
        });
        match &outcome {
            Ok(()) => println!("criterion {} ({name}): pass ({:.2} s)", k + 1, took.as_secs_f64()),
            Err(e) => {
                println!("criterion {} ({name}): FAIL ({:.2} s): {e}", k + 1, took.as_secs_f64());
                failed.push(k + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
