//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use arc_complex::arc::{self, farey};
use arc_complex::cli;
use arc_complex::complex::{ball_complex, ball_complex_around, ArcComplexSlice};
use arc_complex::flip::{self, BallOptions, FlipWord, MarkedTriangulation, DEFAULT_CAP};
use arc_complex::iso::{isomorphisms, Orientation};
use arc_complex::rigidity::{self, checks, CombinatorialHomeo, SimplicialSelfMap};
use arc_complex::{Error, Surface, Triangulation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn run_cli(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("arc-complex").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    let v = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, v, String::from_utf8_lossy(&err).into_owned())
}

fn cli_ok(args: &[&str]) -> Result<Value, String> {
    match run_cli(args) {
        (0, v, _) => Ok(v),
        (code, _, err) => Err(format!("`{}` exited {code}: {err}", args.join(" "))),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_word(t: &Triangulation, len: usize, rng: &mut ChaCha8Rng) -> FlipWord {
    let mut t = t.clone();
    let mut w = Vec::new();
    for _ in 0..len {
        let slots: Vec<usize> = (0..t.arc_count()).filter(|&e| t.is_flippable(e).unwrap()).collect();
        let e = *slots.choose(rng).unwrap();
        t = t.flipped(e).unwrap();
        w.push(e);
    }
    FlipWord(w)
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for g in 0..=2u32 {
        for b in 1..=3u32 {
            let s = Surface::new(g, b).unwrap();
            if !s.triangulable() {
                continue;
            }
            let arcs = (6 * g + 3 * b - 6) as u64;
            let tris = (4 * g + 2 * b - 4) as usize;
            let t0 = Triangulation::new_standard(s).unwrap();
            let mut words = vec![FlipWord::new()];
            for _ in 0..20 {
                let len = rng.gen_range(1..=12);
                words.push(random_word(&t0, len, &mut rng));
            }
            for w in words {
                let (gs, bs, ws) = (g.to_string(), b.to_string(), w.to_string());
                let v = cli_ok(&["tri", "new", "--genus", &gs, "--boundary", &bs, "--word", &ws])?;
                let triangles = v["triangles"].as_array().ok_or("no triangles")?;
                let mut seen = vec![0usize; arcs as usize];
                for t in triangles {
                    for side in t.as_array().unwrap() {
                        seen[side[0].as_u64().unwrap() as usize] += 1;
                    }
                }
                ensure(v["arcs"].as_u64() == Some(arcs) && triangles.len() == tris && seen.iter().all(|&k| k == 2), || {
                    format!("({g},{b}) word {ws}: {} arcs, {} triangles", v["arcs"], triangles.len())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triangulations on 7 signatures"))
}

fn is_group_table(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    let latin = t.iter().all(|row| {
        let mut r = row.clone();
        r.sort_unstable();
        r == (0..n).collect::<Vec<_>>()
    });
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
    let identity = (0..n).any(|e| (0..n).all(|a| t[e][a] == a && t[a][e] == a));
    latin && assoc && identity
}

fn criterion_2() -> Outcome {
    let full = cli_ok(&["complex", "full", "--genus", "0", "--boundary", "3"])?;
    let vertices = full["vertices"].as_array().ok_or("no vertices")?.len();
    let tops = full["maximal_simplices"].as_array().ok_or("no simplices")?;
    let two_simplices = tops.iter().filter(|m| m["vertices"].as_array().map(|v| v.len()) == Some(3)).count();
    ensure(vertices == 6 && two_simplices == 4, || format!("{vertices} vertices, {two_simplices} 2-simplices"))?;
    let aut = cli_ok(&["complex", "aut", "--genus", "0", "--boundary", "3"])?;
    let table: Vec<Vec<usize>> = serde_json::from_value(aut["multiplication_table"].clone()).map_err(|e| e.to_string())?;
    let abelian = (0..table.len()).all(|a| (0..table.len()).all(|b| table[a][b] == table[b][a]));
    ensure(table.len() == 6 && is_group_table(&table) && !abelian, || format!("group of order {} (abelian: {abelian})", table.len()))?;
    Ok("6 vertices, 4 triangles, non-abelian automorphism group of order 6".into())
}

fn criterion_3() -> Outcome {
    let full = cli_ok(&["complex", "full", "--genus", "0", "--boundary", "2"])?;
    let vertices = full["vertices"].as_array().ok_or("no vertices")?.len();
    let aut = cli_ok(&["complex", "aut", "--genus", "0", "--boundary", "2"])?;
    ensure(vertices == 1 && aut["order"] == 1, || format!("{vertices} vertices, group order {}", aut["order"]))?;
    Ok("1 vertex, trivial automorphism group".into())
}

fn criterion_4() -> Outcome {
    let s = farey::torus();
    let center = MarkedTriangulation::standard(s).unwrap();
    let ball = flip::ball(&center, BallOptions::radius(5)).map_err(|e| e.to_string())?;
    // tree: connected (by construction) with one edge fewer than nodes
    ensure(ball.edges.len() + 1 == ball.len(), || format!("{} nodes, {} edges", ball.len(), ball.edges.len()))?;
    let slice = ball_complex(s, 5, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let slopes = slice
        .vertices()
        .iter()
        .map(|c| farey::slope_from_coords(c).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    for &(p, q) in &slopes {
        ensure(farey::coprime(p, q), || format!("{p}/{q} is not reduced"))?;
    }
    let n = slopes.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = farey::determinant(slopes[i], slopes[j]).abs();
            ensure(slice.adjacent(i, j) == (det == 1), || {
                format!("{:?} and {:?}: |det| = {det}, edge = {}", slopes[i], slopes[j], slice.adjacent(i, j))
            })?;
        }
    }
    Ok(format!("{} flip-ball nodes, {} slopes, {} edges", ball.len(), n, slice.edges().len()))
}

// lattice points strictly inside the parallelogram spanned by v and w
fn drawing_oracle(v: (i64, i64), w: (i64, i64)) -> u64 {
    let d = v.0 * w.1 - v.1 * w.0;
    if d == 0 {
        return 0;
    }
    let xs = [0, v.0, w.0, v.0 + w.0];
    let ys = [0, v.1, w.1, v.1 + w.1];
    let mut count = 0;
    for x in *xs.iter().min().unwrap()..=*xs.iter().max().unwrap() {
        for y in *ys.iter().min().unwrap()..=*ys.iter().max().unwrap() {
            // (x, y) = t v + u w with t = tn / d, u = un / d
            let tn = x * w.1 - y * w.0;
            let un = v.0 * y - v.1 * x;
            let inside = |k: i64| if d > 0 { 0 < k && k < d } else { d < k && k < 0 };
            if inside(tn) && inside(un) {
                count += 1;
            }
        }
    }
    count
}

fn criterion_5() -> Outcome {
    let mut slopes = Vec::new();
    for p in -8i64..=8 {
        for q in 0i64..=8 {
            let s = farey::normalize((p, q));
            if (p, q) != (0, 0) && farey::coprime(p, q) && !slopes.contains(&s) {
                slopes.push(s);
            }
        }
    }
    let mut pairs = 0;
    for (i, &a) in slopes.iter().enumerate() {
        for &b in &slopes[i..] {
            let (sa, sb) = (format!("{}/{}", a.0, a.1), format!("{}/{}", b.0, b.1));
            let v = cli_ok(&["arc", "intersect", "--genus", "1", "--boundary", "1", "--a", &sa, "--b", &sb])?;
            let got = v["intersection"].as_u64().ok_or("no intersection")?;
            let want = if a == b { 0 } else { drawing_oracle(a, b) };
            ensure(got == want, || format!("i({sa}, {sb}) = {got}, drawing gives {want}"))?;
            let farey_adjacent = farey::determinant(a, b).abs() == 1;
            ensure((got == 0) == (a == b || farey_adjacent), || format!("i({sa}, {sb}) = {got}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{} slopes, {pairs} pairs", slopes.len()))
}

const SIGNATURES: [(u32, u32); 3] = [(0, 4), (1, 1), (1, 2)];

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (g, b) in SIGNATURES {
        let s = Surface::new(g, b).unwrap();
        let t0 = Triangulation::new_standard(s).unwrap();
        for k in 0..100 {
            let len = rng.gen_range(0..=8);
            let m = MarkedTriangulation::from_word(s, &random_word(&t0, len, &mut rng)).unwrap();
            let e = *m.flippable_slots().choose(&mut rng).unwrap();
            let (a, b2) = (m.class(e).clone(), m.flip(e).unwrap().class(e).clone());
            let i = arc::intersection(&a, &b2).map_err(|e| e.to_string())?.0;
            ensure(i == 1, || format!("({g},{b}) pair {k}: i(a, b) = {i}"))?;
            let domain = ArcComplexSlice::from_vertices(s, vec![a.clone(), b2.clone()]).map_err(|e| e.to_string())?;
            let h = CombinatorialHomeo::random(s, 10, &mut rng).map_err(|e| e.to_string())?;
            let map = rigidity::induced_map(&h, &domain).map_err(|e| e.to_string())?;
            let (ia, ib) = (domain.index_of(&a).unwrap(), domain.index_of(&b2).unwrap());
            let report = checks::check_intersection_one(&map, &[(ia, ib)]).map_err(|e| e.to_string())?;
            ensure(report.is_empty(), || format!("({g},{b}) pair {k}: {:?}", report.failures))?;
        }
    }
    Ok("300 elementary-move pairs meet once, images under random homeomorphisms too".into())
}

fn ball_of(s: Surface, radius: usize) -> Result<ArcComplexSlice, String> {
    ball_complex(s, radius, DEFAULT_CAP).map_err(|e| e.to_string())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nontrivial = 0;
    let mut vertices = 0;
    for (g, b) in SIGNATURES {
        let s = Surface::new(g, b).unwrap();
        let slice = ball_of(s, 2)?;
        for k in 0..50 {
            let h = CombinatorialHomeo::random(s, 10, &mut rng).map_err(|e| e.to_string())?;
            let map = rigidity::induced_map(&h, &slice).map_err(|e| e.to_string())?;
            let r = rigidity::reconstruct(&map, 0).map_err(|e| format!("({g},{b}) homeo {k}: reconstruct: {e}"))?;
            let report = rigidity::verify_geometric(&map, &r, 0).map_err(|e| format!("({g},{b}) homeo {k}: verify: {e}"))?;
            vertices += report.vertices;
            if !map.images().iter().zip(slice.vertices()).all(|(x, y)| x == y) {
                nontrivial += 1;
            }
        }
    }
    Ok(format!("150 homeomorphisms ({nontrivial} non-identity), {vertices} vertex agreements"))
}

fn judge(mut map: SimplicialSelfMap) -> Result<&'static str, String> {
    let (simplicial, injective) = map.verify().map_err(|e| e.to_string())?;
    if !simplicial {
        return Ok("simpliciality");
    }
    if !injective {
        return Ok("injectivity");
    }
    let h = match rigidity::reconstruct(&map, 0) {
        Ok(h) => h,
        Err(Error::Refuted(c)) => return Ok(c.kind.property()),
        Err(e) => return Err(e.to_string()),
    };
    match rigidity::verify_geometric(&map, &h, 0) {
        Ok(_) => Err("corrupted map accepted".into()),
        Err(Error::Refuted(c)) => Ok(c.kind.property()),
        Err(e) => Err(e.to_string()),
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut kinds: Vec<&str> = Vec::new();
    for (g, b) in SIGNATURES {
        let s = Surface::new(g, b).unwrap();
        let slice = ball_of(s, 2)?;
        for k in 0..50 {
            let h = CombinatorialHomeo::random(s, 10, &mut rng).map_err(|e| e.to_string())?;
            let mut map = rigidity::induced_map(&h, &slice).map_err(|e| e.to_string())?;
            let v = rng.gen_range(0..slice.len());
            let crossing: Vec<usize> = (0..slice.len()).filter(|&u| u != v && !slice.adjacent(u, v)).collect();
            let u = *crossing.choose(&mut rng).ok_or("vertex crosses nothing")?;
            let (iv, iu) = (map.images()[v].clone(), map.images()[u].clone());
            map.set_image(v, iu).unwrap();
            map.set_image(u, iv).unwrap();
            let kind = judge(map).map_err(|e| format!("({g},{b}) control {k} (vertices {v}, {u}): {e}"))?;
            kinds.push(kind);
        }
    }
    let distinct: HashSet<&str> = kinds.iter().copied().collect();
    let mut names: Vec<&str> = distinct.into_iter().collect();
    names.sort_unstable();
    Ok(format!("150 corrupted maps refuted by {}", names.join(", ")))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let s = Surface::new(0, 4).unwrap();
    let center = MarkedTriangulation::standard(s).unwrap();
    let ball = flip::ball(&center, BallOptions::radius(4)).map_err(|e| e.to_string())?;
    let mut longest = 0;
    for k in 0..50 {
        let a = &ball.nodes[rng.gen_range(0..ball.len())].marked;
        let b = &ball.nodes[rng.gen_range(0..ball.len())].marked;
        let (wa, wb) = (a.word().to_string(), b.word().to_string());
        let v = cli_ok(&["flip", "path", "--genus", "0", "--boundary", "4", "--from", &wa, "--to", &wb])?;
        let word: FlipWord = serde_json::from_value(v["word"].clone()).map_err(|e| e.to_string())?;
        let reached = a.apply(&word).map_err(|e| e.to_string())?;
        ensure(word.len() <= 8 && reached.key() == b.key(), || format!("pair {k}: word {word} of length {}", word.len()))?;
        longest = longest.max(word.len());
    }
    Ok(format!("50 pairs in a ball of {} triangulations, longest word {longest}", ball.len()))
}

fn criterion_10() -> Outcome {
    let s = farey::torus();
    let codomain = ball_of(s, 3)?;
    let mut maps = 0;
    let mut check = |h: &CombinatorialHomeo| -> Result<(), String> {
        let center = MarkedTriangulation::from_word(s, h.word()).map_err(|e| e.to_string())?;
        let domain = ball_complex_around(&center, BallOptions::radius(3)).map_err(|e| e.to_string())?;
        let map = rigidity::induced_map(h, &domain).map_err(|e| e.to_string())?;
        let r = rigidity::surjectivity_extend(&map, &codomain, 0).map_err(|e| e.to_string())?;
        ensure(r.all_interior_covered && r.mismatches == 0, || {
            format!("word {}: {} of {} interior vertices covered", h.word(), r.covered.len(), r.interior.len())
        })?;
        maps += 1;
        Ok(())
    };
    let t0 = Triangulation::new_standard(s).unwrap();
    for o in [Orientation::Preserving, Orientation::Reversing] {
        for iso in isomorphisms(&t0, &t0, None, Some(o)) {
            check(&CombinatorialHomeo::new(s, FlipWord::new(), iso).map_err(|e| e.to_string())?)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        check(&CombinatorialHomeo::random(s, 10, &mut rng).map_err(|e| e.to_string())?)?;
    }
    check(&CombinatorialHomeo::torus_twist_a().map_err(|e| e.to_string())?)?;
    check(&CombinatorialHomeo::torus_twist_b().map_err(|e| e.to_string())?)?;
    Ok(format!("{maps} induced maps cover every interior vertex of the radius-3 ball"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("count formulas", criterion_1, Duration::from_secs(5)),
        ("pair of pants", criterion_2, Duration::from_secs(1)),
        ("annulus", criterion_3, Duration::from_secs(1)),
        ("Farey model", criterion_4, Duration::from_secs(30)),
        ("intersection oracle", criterion_5, Duration::from_secs(60)),
        ("intersection one", criterion_6, Duration::from_secs(60)),
        ("reconstruction round trip", criterion_7, Duration::from_secs(300)),
        ("negative controls", criterion_8, Duration::from_secs(120)),
        ("connectivity", criterion_9, Duration::from_secs(60)),
        ("surjectivity chains", criterion_10, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let verdict = match &outcome {
            Ok(_) if took <= *budget => "PASS",
            _ => "FAIL",
        };
        let detail = match outcome {
            Ok(d) if took <= *budget => d,
            Ok(d) => format!("{d}; over the {budget:?} budget"),
            Err(e) => e,
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} {:>2} {name} ({:.2}s): {detail}", i + 1, took.as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
