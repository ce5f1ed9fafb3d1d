//! The full battery of checks behind `fplpp verify`.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;

use fplpp::bijection::Bijection;
use fplpp::dynamics::{flip_closure, hfpl_complement, nested_families, wieland_gyration};
use fplpp::geometry::{all_triples, classify, fixed_edges};
use fplpp::grid::{
    enumerate_fpl, internal_loop_count, is_type_abc, link_pattern, partition_by_pattern, EdgeState, FplGrid,
};
use fplpp::partitions::formula::{macmahon_binomial, macmahon_hyperfactorial, macmahon_hyperfactorial_short, macmahon_product};
use fplpp::partitions::{enumerate_pp, macdonald_q, macmahon, pp_to_tiling, Honeycomb, PlanePartition, QPolynomial, DEFAULT_PP_BOUND};
use fplpp::Result;

use crate::report::RunReport;

/// Outcome of one check: `Err` carries a counterexample.
type Outcome = std::result::Result<String, String>;

struct Placement {
    n: usize,
    centers: [usize; 3],
    bij: Bijection,
    closure: Vec<FplGrid>,
}

impl Placement {
    fn label(&self) -> String {
        let (a, b, c) = self.bij.abc();
        format!("n={} centers={:?} ({a},{b},{c})", self.n, self.centers)
    }
}

fn sorted(mut t: [usize; 3]) -> [usize; 3] {
    t.sort();
    t
}

fn record(report: &mut RunReport, name: &str, outcome: Outcome) {
    match outcome {
        Ok(detail) => report.check(name, true, detail),
        Err(detail) => report.check(name, false, detail),
    }
}

/// Every check over the placements with `3 <= n <= n_max`.
pub fn run(n_max: usize, report: &mut RunReport) -> Result<()> {
    let ns: Vec<usize> = (3..=n_max).collect();
    let placements: Vec<Placement> = report.time("closure", || {
        ns.iter()
            .flat_map(|&n| all_triples(n).into_iter().map(move |t| (n, t)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(n, centers)| {
                let geo = classify(n, centers)?;
                let closure = flip_closure(&geo, n_max)?;
                Ok(Placement {
                    n,
                    centers,
                    bij: Bijection::new(geo)?,
                    closure,
                })
            })
            .collect::<Result<_>>()
    })?;
    report.count("placements", placements.len());
    report.count(
        "configurations",
        placements.iter().map(|p| p.closure.len()).sum::<usize>(),
    );

    // oracle configurations of three-bundle type, by sorted centers
    let oracle: HashMap<(usize, [usize; 3]), Vec<FplGrid>> = report.time("oracle", || {
        let mut m: HashMap<(usize, [usize; 3]), Vec<FplGrid>> = HashMap::new();
        for &n in &ns {
            for parity in 0..2 {
                for g in enumerate_fpl(n, parity, n_max)? {
                    if let Some(tb) = is_type_abc(&link_pattern(&g)?) {
                        m.entry((n, sorted(tb.bundles.map(|b| b.center)))).or_default().push(g);
                    }
                }
            }
        }
        Ok::<_, fplpp::Error>(m)
    })?;

    let r = report.time("counting", || counting(&placements));
    record(report, "1 counting", r);
    let r = report.time("oracle-sets", || oracle_sets(&placements, &oracle));
    record(report, "2 oracle cross-check", r);
    let r = report.time("round-trips", || round_trips(&placements));
    record(report, "3 bijectivity", r);
    let r = report.time("fixed-edges", || fixed_edge_sets(&placements, &oracle));
    record(report, "4 fixed edges", r);
    let r = report.time("loops", || loopless(&placements));
    record(report, "5 no internal loops", r);
    let r = report.time("q-grading", || q_grading(&placements));
    record(report, "6 q-grading", r);
    let r = report.time("gyration", || gyration(&ns, &placements));
    record(report, "7 gyration", r);
    let r = report.time("formulas", formulas);
    record(report, "8 formula consistency", r);
    let r = report.time("hfpl", hfpl);
    record(report, "9 honeycomb loops", r);
    Ok(())
}

fn first_failure<T: Sync>(items: &[T], f: impl Fn(&T) -> Option<String> + Sync + Send) -> Option<String> {
    items.par_iter().filter_map(f).collect::<Vec<_>>().into_iter().next()
}

fn counting(ps: &[Placement]) -> Outcome {
    let bad = first_failure(ps, |p| {
        let (a, b, c) = p.bij.abc();
        let want = macmahon(a, b, c);
        (BigUint::from(p.closure.len()) != want)
            .then(|| format!("{}: closure has {} configurations, box count {want}", p.label(), p.closure.len()))
    });
    match bad {
        Some(s) => Err(s),
        None => Ok(format!("{} placements", ps.len())),
    }
}

fn oracle_sets(ps: &[Placement], oracle: &HashMap<(usize, [usize; 3]), Vec<FplGrid>>) -> Outcome {
    let bad = first_failure(ps, |p| {
        let got: HashSet<String> = p.closure.iter().map(|g| g.to_json_string()).collect();
        let want: HashSet<String> = oracle
            .get(&(p.n, sorted(p.centers)))
            .map(|v| v.iter().map(|g| g.to_json_string()).collect())
            .unwrap_or_default();
        (got != want).then(|| {
            let extra = want.difference(&got).next().or_else(|| got.difference(&want).next());
            format!("{}: sets differ, e.g. {}", p.label(), extra.cloned().unwrap_or_default())
        })
    });
    match bad {
        Some(s) => Err(s),
        None => Ok(format!("{} configurations", oracle.values().map(Vec::len).sum::<usize>())),
    }
}

fn round_trips(ps: &[Placement]) -> Outcome {
    let bad = first_failure(ps, |p| {
        for g in &p.closure {
            let back = p.bij.fpl_to_pp(g).and_then(|pp| p.bij.pp_to_fpl(&pp));
            if back.as_ref() != Ok(g) {
                return Some(format!("{}: fpl round trip fails at {}", p.label(), g.to_json_string()));
            }
        }
        let (a, b, c) = p.bij.abc();
        for pp in enumerate_pp(a, b, c, DEFAULT_PP_BOUND).ok()? {
            let back = p.bij.pp_to_fpl(&pp).and_then(|g| p.bij.fpl_to_pp(&g));
            if back.as_ref() != Ok(&pp) {
                return Some(format!("{}: partition round trip fails at {}", p.label(), pp.to_json_string()));
            }
        }
        None
    });
    match bad {
        Some(s) => Err(s),
        None => Ok("both directions are identities".into()),
    }
}

fn fixed_edge_sets(ps: &[Placement], oracle: &HashMap<(usize, [usize; 3]), Vec<FplGrid>>) -> Outcome {
    let bad = first_failure(ps, |p| {
        let all = oracle.get(&(p.n, sorted(p.centers)))?;
        let fixed = fixed_edges(&p.bij.geometry).ok()?;
        let lat = fixed.lattice();
        (0..lat.edge_count()).find_map(|e| {
            let s = all[0].get(e);
            let common = if all.iter().all(|g| g.get(e) == s) { s } else { EdgeState::Undetermined };
            (common != fixed.get(e)).then(|| {
                format!("{}: edge {:?} is {:?} in every configuration but {:?} in the forced set", p.label(), lat.edge_ref(e), common, fixed.get(e))
            })
        })
    });
    match bad {
        Some(s) => Err(s),
        None => Ok("forced edges equal the oracle intersection".into()),
    }
}

fn loopless(ps: &[Placement]) -> Outcome {
    let bad = first_failure(ps, |p| {
        p.closure
            .iter()
            .find(|g| internal_loop_count(g) != Ok(0))
            .map(|g| format!("{}: loop in {}", p.label(), g.to_json_string()))
    });
    match bad {
        Some(s) => Err(s),
        None => Ok("no configuration has a closed loop".into()),
    }
}

fn q_grading(ps: &[Placement]) -> Outcome {
    let bad = first_failure(ps, |p| {
        let degrees: Vec<usize> = p.closure.iter().map(|g| p.bij.fpl_to_pp(g).map(|pp| pp.boxes())).collect::<Result<_>>().ok()?;
        let got = QPolynomial::from_degrees(degrees);
        let (a, b, c) = p.bij.abc();
        let want = macdonald_q(a, b, c);
        (got != want).then(|| format!("{}: got {got}, expected {want}", p.label()))
    });
    match bad {
        Some(s) => Err(s),
        None => Ok("box-count polynomials agree".into()),
    }
}

fn gyration(ns: &[usize], ps: &[Placement]) -> Outcome {
    for &n in ns.iter().filter(|&&n| n <= 4) {
        for parity in 0..2 {
            let all = enumerate_fpl(n, parity, n).map_err(|e| e.to_string())?;
            let counts = partition_by_pattern(&all).map_err(|e| e.to_string())?;
            for (pat, k) in &counts {
                let r = counts.get(&pat.rotated(1)).copied().unwrap_or(0);
                if r != *k {
                    return Err(format!("n={n}: {k} configurations of {pat:?}, {r} of its rotation"));
                }
            }
        }
    }
    let by_centers: BTreeMap<(usize, [usize; 3]), &Placement> = ps.iter().map(|p| ((p.n, sorted(p.centers)), p)).collect();
    let bad = first_failure(ps, |p| {
        let m = 4 * p.n;
        for g in &p.closure {
            let h = wieland_gyration(g).ok()?;
            let Some(tb) = link_pattern(&h).ok().as_ref().and_then(is_type_abc) else {
                return Some(format!("{}: gyration left the three-bundle type at {}", p.label(), g.to_json_string()));
            };
            let q = by_centers.get(&(p.n, sorted(tb.bundles.map(|b| b.center))))?;
            let ids = p.bij.geometry.centers();
            let perm = q.bij.geometry.centers().map(|c| ids.iter().position(|&x| (x + 2) % m == c).unwrap_or(0));
            let before = p.bij.fpl_to_pp(g).ok()?.permute_axes(perm);
            let after = q.bij.fpl_to_pp(&h).ok();
            if after.as_ref() != Some(&before) || internal_loop_count(&h) != Ok(0) {
                return Some(format!("{}: image changes under gyration at {}", p.label(), g.to_json_string()));
            }
        }
        None
    });
    match bad {
        Some(s) => Err(s),
        None => Ok("pattern counts rotate; images are preserved".into()),
    }
}

fn formulas() -> Outcome {
    for a in 0..=8 {
        for b in 0..=8 {
            for c in 0..=8 {
                let p = macmahon_product(a, b, c);
                if p != macmahon_binomial(a, b, c) || p != macmahon_hyperfactorial(a, b, c) {
                    return Err(format!("closed forms disagree at ({a},{b},{c})"));
                }
            }
        }
    }
    let (num, den) = macmahon_hyperfactorial_short(2, 2, 2);
    Ok(format!(
        "product and binomial forms agree for a,b,c <= 8; the hyperfactorial form with H(b+c-1) gives {} at (2,2,2), not {}",
        num / den,
        macmahon(2, 2, 2)
    ))
}

/// The triples of the three-domain pictures, and every box of volume at
/// most 27.
pub fn hfpl_triples() -> Vec<(usize, usize, usize)> {
    let mut v = vec![(2, 3, 10), (3, 2, 7), (3, 4, 3)];
    for a in 1..=27 {
        for b in 1..=27 / a {
            for c in 1..=27 / (a * b) {
                v.push((a, b, c));
            }
        }
    }
    v
}

fn hfpl() -> Outcome {
    let triples = hfpl_triples();
    for &(a, b, c) in &triples {
        let h = Honeycomb::new(a, b, c);
        for pp in [PlanePartition::empty(a, b, c), PlanePartition::full(a, b, c)] {
            let cfg = hfpl_complement(&pp_to_tiling(&pp, &h).map_err(|e| e.to_string())?);
            let fam = nested_families(&cfg.link_pattern());
            let ok = cfg.internal_loop_count() == 0 && fam.as_ref().is_some_and(|f| is_rotation_of(f, &[a, b, c]));
            if !ok {
                return Err(format!("({a},{b},{c}) {}: loops {}, families {fam:?}", pp.to_json_string(), cfg.internal_loop_count()));
            }
        }
    }
    Ok(format!("{} boxes", triples.len()))
}

fn is_rotation_of(f: &[usize], want: &[usize]) -> bool {
    f.len() == want.len() && (0..f.len()).any(|k| f.iter().cycle().skip(k).take(f.len()).eq(want.iter()))
}
