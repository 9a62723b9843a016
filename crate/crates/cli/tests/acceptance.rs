//! Acceptance gate. One line per criterion, then a nonzero exit if any
//! criterion failed.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use dvrtop_core::fx::{continuity_certificate, evaluate_fx, sampled_continuity_check, RealizationPoint, SampleOptions};
use dvrtop_core::generators::{circulant, digital_image, digital_sphere_points, figure_digraph, random_digraph, Figure};
use dvrtop_core::homology::boundary_matrix;
use dvrtop_core::homology::les::les_exactness_check;
use dvrtop_core::homology::pi1::{abelianization, pi1_presentation};
use dvrtop_core::homology::snf::smith_normal_form;
use dvrtop_core::{build_complex, check_cone, check_full_subcomplex, homology_field, homology_integer, Coefficients, Digraph, SimplicialComplex, VertexSet};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

/// 210 digraphs: n cycles through 3..=8, p through {0.2, 0.4, 0.7}.
fn corpus() -> Vec<(String, Digraph)> {
    let mut out = Vec::new();
    for seed in 0..70u64 {
        for p in [0.2, 0.4, 0.7] {
            let n = 3 + (seed as usize % 6);
            out.push((format!("random(n={n}, p={p}, seed={seed})"), random_digraph(n, p, seed).unwrap()));
        }
    }
    out
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    let mask: u32 = rng.random_range(1..(1u32 << n));
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

fn dvrtop(args: &[&str], stdin: &str) -> (String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dvrtop"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::inherit())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap_or(-1))
}

fn group_summary(k: &SimplicialComplex) -> Vec<(usize, Vec<BigInt>)> {
    homology_integer(k, false).groups.into_iter().map(|g| (g.betti, g.torsion)).collect()
}

fn octahedron_pipeline() -> Outcome {
    let start = Instant::now();
    let (g, code) = dvrtop(&["gen", "circulant", "--n", "6", "--m", "2"], "");
    ensure(code == 0, || format!("gen exited {code}"))?;
    let (h, code) = dvrtop(&["homology", "--coeff", "z"], &g);
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("homology exited {code}"))?;
    let report: Value = serde_json::from_str(&h).map_err(|e| e.to_string())?;
    let groups: Vec<(u64, usize)> = report["results"]["groups"]
        .as_array()
        .ok_or("no groups")?
        .iter()
        .map(|g| (g["betti"].as_u64().unwrap(), g["torsion"].as_array().unwrap().len()))
        .collect();
    ensure(groups == vec![(1, 0), (0, 0), (1, 0)], || format!("groups {groups:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("H = (Z, 0, Z) in {elapsed:.2?}"))
}

fn isomorphism(a: &Digraph, b: &Digraph) -> Option<Vec<usize>> {
    fn extend(a: &Digraph, b: &Digraph, perm: &mut Vec<usize>) -> bool {
        let k = perm.len();
        if k == a.n() {
            return true;
        }
        for c in 0..b.n() {
            if perm.contains(&c) {
                continue;
            }
            if (0..k).all(|i| a.has_edge(i, k) == b.has_edge(perm[i], c) && a.has_edge(k, i) == b.has_edge(c, perm[i])) {
                perm.push(c);
                if extend(a, b, perm) {
                    return true;
                }
                perm.pop();
            }
        }
        false
    }
    let mut perm = Vec::new();
    (a.n() == b.n() && extend(a, b, &mut perm)).then_some(perm)
}

fn digital_sphere() -> Outcome {
    let start = Instant::now();
    let s2 = digital_image(&digital_sphere_points()).map_err(|e| e.to_string())?;
    let oct = circulant(6, 2).unwrap();
    let perm = isomorphism(&s2, &oct).ok_or("no isomorphism to circulant(6,2)")?;
    let (hs, ho) = (group_summary(&build_complex(&s2, None)), group_summary(&build_complex(&oct, None)));
    ensure(hs == ho, || format!("{hs:?} vs {ho:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("isomorphism {perm:?}, homology {:?}, {elapsed:.2?}", hs.iter().map(|g| g.0).collect::<Vec<_>>()))
}

fn figures() -> Outcome {
    let want = [
        (Figure::Left, vec![4, 5, 2], vec![1, 0, 0]),
        (Figure::Middle, vec![4, 5, 0], vec![1, 2]),
        (Figure::Right, vec![4, 4], vec![1, 1]),
    ];
    let mut seen = Vec::new();
    for (fig, fv, betti) in want {
        let k = build_complex(&figure_digraph(fig), None);
        let h = homology_integer(&k, false);
        let mut padded = k.f_vector();
        ensure(padded.len() <= fv.len(), || format!("{fig:?}: f-vector {padded:?}"))?;
        padded.resize(fv.len(), 0);
        ensure(padded == fv, || format!("{fig:?}: f-vector {:?}", k.f_vector()))?;
        ensure(h.bettis() == betti, || format!("{fig:?}: betti {:?}", h.bettis()))?;
        ensure(h.groups.iter().all(|g| g.torsion.is_empty()), || format!("{fig:?}: torsion"))?;
        seen.push(format!("{fig:?} {padded:?}/{:?}", h.bettis()));
    }
    Ok(seen.join(", "))
}

fn cone_suite(corpus: &[(String, Digraph)]) -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for (name, g) in corpus {
        for x in 0..g.n() {
            ensure(check_cone(g, x).unwrap(), || format!("{name}: cone fails at {x}"))?;
            let ux = g.minimal_neighborhood(x).unwrap();
            let k = build_complex(&g.induced_subgraph(&ux).unwrap(), None);
            let h = homology_integer(&k, true);
            ensure(h.is_trivial(), || format!("{name}: reduced H(U_{x}) = {:?}", h.groups))?;
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} digraphs, {checks} neighborhoods, {elapsed:.2?}", corpus.len()))
}

fn full_subcomplex_suite(corpus: &[(String, Digraph)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checks = 0;
    for (name, g) in corpus {
        for _ in 0..4 {
            let a = random_subset(&mut rng, g.n());
            ensure(check_full_subcomplex(g, &a, None).unwrap(), || format!("{name}: fails on {a:?}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} (digraph, subset) pairs"))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    (0..items.len())
        .flat_map(|i| {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            permutations(&rest).into_iter().map(move |mut p| {
                p.insert(0, head);
                p
            })
        })
        .collect()
}

fn brute_force(g: &Digraph) -> BTreeSet<Vec<usize>> {
    let n = g.n();
    (1u32..(1u32 << n))
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| {
            permutations(s)
                .iter()
                .any(|p| (0..p.len()).all(|i| (i + 1..p.len()).all(|j| g.has_edge(p[i], p[j]))))
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..100 {
        let n = rng.random_range(1..=6);
        let p = [0.2, 0.4, 0.7, 0.9][i % 4];
        let g = random_digraph(n, p, rng.random()).unwrap();
        let k = build_complex(&g, None);
        let built: BTreeSet<Vec<usize>> = k.iter().map(|s| s.vertices().to_vec()).collect();
        let oracle = brute_force(&g);
        ensure(built == oracle, || format!("instance {i}: {} built vs {} brute force", built.len(), oracle.len()))?;
        ensure(k.iter().all(|s| s.witness_valid_in(&g)), || format!("instance {i}: bad witness"))?;
    }
    Ok("100 instances, 0 discrepancies".into())
}

fn chain_soundness(corpus: &[(String, Digraph)]) -> Outcome {
    let mut complexes: Vec<(String, SimplicialComplex)> =
        corpus.iter().map(|(name, g)| (name.clone(), build_complex(g, None))).collect();
    complexes.push(("octahedron".into(), build_complex(&circulant(6, 2).unwrap(), None)));
    for fig in [Figure::Left, Figure::Middle, Figure::Right] {
        complexes.push((format!("{fig:?}"), build_complex(&figure_digraph(fig), None)));
    }
    let mut factored = 0;
    for (name, k) in &complexes {
        let top = k.top_dim().unwrap_or(0);
        for n in 1..=top + 1 {
            let d = boundary_matrix(k, n);
            ensure(boundary_matrix(k, n - 1).mul(&d).is_zero(), || format!("{name}: dd != 0 at {n}"))?;
            let s = smith_normal_form(&d);
            ensure(s.verify(&d), || format!("{name}: u a v != diag(d) at {n}"))?;
            ensure(s.d.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)), || format!("{name}: divisibility at {n}"))?;
            factored += 1;
        }
        let q = homology_field(k, Coefficients::Rational).unwrap();
        ensure(q == homology_integer(k, false).bettis(), || format!("{name}: Q betti {q:?}"))?;
    }
    Ok(format!("{} complexes, {factored} matrices factored", complexes.len()))
}

fn les_suite(corpus: &[(String, Digraph)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0;
    for (name, g) in corpus.iter().take(120) {
        let a = random_subset(&mut rng, g.n());
        let k = build_complex(g, None);
        let sub = build_complex(&g.induced_subgraph(&a).unwrap(), None).relabel(a.as_slice());
        for coeff in [Coefficients::Rational, Coefficients::Prime(2)] {
            let r = les_exactness_check(&k, &sub, coeff).map_err(|e| e.to_string())?;
            if let Some(bad) = r.nodes.iter().find(|n| !n.exact) {
                return Err(format!("{name}, A = {a:?}, {coeff:?}: not exact at {bad}"));
            }
        }
        pairs += 1;
    }
    Ok(format!("{pairs} pairs over Q and Z/2"))
}

fn pi1_suite(corpus: &[(String, Digraph)]) -> Outcome {
    let mut connected = 0;
    for (name, g) in corpus {
        let k = build_complex(g, None);
        let h = homology_integer(&k, false);
        if h.groups[0].betti != 1 {
            continue;
        }
        let p = pi1_presentation(&k, 0).map_err(|e| format!("{name}: {e}"))?;
        let h1 = h.groups.get(1).cloned().unwrap_or_default();
        ensure(abelianization(&p) == h1, || format!("{name}: ab(pi1) = {} but H1 = {h1}", abelianization(&p)))?;
        connected += 1;
    }
    let square = pi1_presentation(&build_complex(&figure_digraph(Figure::Right), None), 0).unwrap();
    ensure(abelianization(&square).to_string() == "Z", || format!("hollow square {square}"))?;
    let oct = pi1_presentation(&build_complex(&circulant(6, 2).unwrap(), None), 0).unwrap();
    ensure(abelianization(&oct).is_zero(), || format!("octahedron {oct}"))?;
    Ok(format!("{connected} connected complexes; square {square}; octahedron {oct}"))
}

fn fx_suite(corpus: &[(String, Digraph)]) -> Outcome {
    for (name, g) in corpus {
        let c = continuity_certificate(&build_complex(g, None), g);
        ensure(c.passed, || format!("{name}: certificate counterexample {:?}", c.counterexample))?;
    }
    let fixtures = [
        ("octahedron", circulant(6, 2).unwrap()),
        ("digital S2", digital_image(&digital_sphere_points()).unwrap()),
        ("figure left", figure_digraph(Figure::Left)),
        ("figure middle", figure_digraph(Figure::Middle)),
        ("figure right", figure_digraph(Figure::Right)),
    ];
    let mut notes = Vec::new();
    for (name, g) in &fixtures {
        let k = build_complex(g, None);
        // Coordinate gaps of sampled points are multiples of 1/S with
        // S <= 1000 (d + 1); any radius below that cannot move a point
        // out of its cell.
        let d = k.top_dim().unwrap();
        let below_resolution = BigRational::new(BigInt::from(1), BigInt::from(1000 * (d + 1) + 1));
        let opts = SampleOptions { samples: 10_000, delta: below_resolution, seed: 1 };
        let r = sampled_continuity_check(&k, g, &opts).unwrap();
        ensure(r.failures == 0, || format!("{name}: {} failures at delta {}", r.failures, opts.delta))?;
        let at_bound = sampled_continuity_check(&k, g, &SampleOptions { delta: BigRational::new(1.into(), 1000.into()), ..opts.clone() }).unwrap();
        notes.push(format!("{name} 0@{} ({}@1/1000)", opts.delta, at_bound.failures));
    }
    // Two witnesses for the same edge midpoint: x, y, z = 0, 1, 2.
    let k = SimplicialComplex::from_witnessed(vec![vec![0], vec![1], vec![2], vec![1, 0], vec![0, 2], vec![1, 2], vec![0, 1, 2]])
        .map_err(|e| e.to_string())?;
    let complete = Digraph::from_edge_list(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]).unwrap();
    ensure(k.iter().all(|s| s.witness_valid_in(&complete)), || "witnesses invalid".into())?;
    let half = BigRational::new(1.into(), 2.into());
    let zero = BigRational::new(0.into(), 1.into());
    let on_edge = RealizationPoint::new(k.get(&[0, 1]).unwrap(), vec![half.clone(), half.clone()]).unwrap();
    let in_triangle = RealizationPoint::new(k.get(&[0, 1, 2]).unwrap(), vec![half.clone(), half, zero]).unwrap();
    let (e, t) = (evaluate_fx(&on_edge), evaluate_fx(&in_triangle));
    ensure((e, t) == (0, 1), || format!("midpoint images {e}, {t}"))?;
    Ok(format!("{} certificates; sampled {}; midpoint -> x on [y,x], y on [x,y,z]", corpus.len(), notes.join(", ")))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 octahedron homology via cli", Box::new(octahedron_pipeline)),
        ("2 digital sphere", Box::new(digital_sphere)),
        ("3 figure fixtures", Box::new(figures)),
        ("4 cone lemma suite", Box::new(|| cone_suite(&corpus))),
        ("5 full-subcomplex suite", Box::new(|| full_subcomplex_suite(&corpus))),
        ("6 oracle equivalence", Box::new(oracle_equivalence)),
        ("7 chain-complex soundness", Box::new(|| chain_soundness(&corpus))),
        ("8 LES exactness", Box::new(|| les_suite(&corpus))),
        ("9 pi1 consistency", Box::new(|| pi1_suite(&corpus))),
        ("10 f_X certification", Box::new(|| fx_suite(&corpus))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
