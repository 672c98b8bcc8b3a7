//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines always show.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use subcube::affine::{avsp_family, compress, parse_avsp};
use subcube::families::*;
use subcube::format::parse_scp;
use subcube::irreducibility::verify_witness;
use subcube::qary::{expand, minimal_qary, staircase_cover, ExpansionMap};
use subcube::search::*;
use subcube::{is_irreducible, test_irreducible, CubeSymmetry, Parity, Subcube, SubcubeCollection, Symbol};
use subcube_cli::expect::{Input, Predicate};
use subcube_cli::{fixtures, run};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn fixture(name: &str) -> SubcubeCollection {
    parse_scp(fixtures::get(name).unwrap().text).unwrap()
}

fn gen(args: &[&str]) -> SubcubeCollection {
    let mut out = Vec::new();
    let code = run(["subcube", "gen"].iter().chain(args), &mut out, &mut std::io::sink());
    assert_eq!(code, 0, "gen {args:?}");
    parse_scp(&String::from_utf8(out).unwrap()).unwrap()
}

fn fixture_equality() -> Outcome {
    let cases: Vec<(&str, SubcubeCollection)> = vec![
        ("s3", gen(&["s", "--n", "3"])),
        ("s4", gen(&["s", "--n", "4"])),
        ("a5", rotate_left(&gen(&["weight", "--n", "5", "--variant", "A"]))),
        ("b5", rotate_left(&gen(&["weight", "--n", "5", "--variant", "B"]))),
        ("c5", rotate_left(&gen(&["weight", "--n", "5", "--variant", "C"]))),
        ("d5", rotate_left(&gen(&["weight", "--n", "5", "--variant", "D"]))),
        ("cubic-5", gen(&["cubic", "--n", "5"])),
        ("lagarias-shor-5", gen(&["lagarias-shor", "--n", "5"])),
        ("maximal-3", gen(&["maximal", "--n", "3"])),
        ("spm-4", gen(&["spm", "--n", "4"])),
        ("homogeneous-6-4", gen(&["homogeneous-6-4"])),
    ];
    for (name, f) in cases {
        ensure(f.same_members(&fixture(name)), || format!("{name} differs from its listing"))?;
    }
    Ok(())
}

fn check_tight_irreducible(label: &str, f: &SubcubeCollection) -> Outcome {
    ensure(f.is_partition() && f.is_tight() && is_irreducible(f), || format!("{label} fails"))
}

fn verification_stack() -> Outcome {
    for fx in fixtures::ALL {
        let checks = Input::parse(fx.text).map_err(|e| format!("{}: {e}", fx.name))?.check();
        for e in fx.expectations() {
            ensure(e.holds(&checks), || format!("fixture {}: {e}", fx.name))?;
        }
        let claims_irreducible = fx.expectations().iter().any(|e| e.predicate == Predicate::Irreducible && !e.negated);
        ensure(!claims_irreducible || checks.irreducible == Some(true), || format!("fixture {}", fx.name))?;
    }
    for n in 3..=10 {
        check_tight_irreducible(&format!("s({n})"), &family_s(n).unwrap())?;
        for v in [WeightVariant::A, WeightVariant::B, WeightVariant::C, WeightVariant::D] {
            check_tight_irreducible(&format!("weight {v:?}({n})"), &family_weight(n, v).unwrap())?;
        }
        check_tight_irreducible(&format!("maximal({n})"), &maximal_family(n).unwrap())?;
        check_tight_irreducible(&format!("min-dim({n})"), &min_dim_family(n).unwrap())?;
        if n % 2 == 1 {
            check_tight_irreducible(&format!("cubic({n})"), &cubic(n).unwrap())?;
            check_tight_irreducible(&format!("lagarias-shor({n})"), &lagarias_shor(n).unwrap())?;
        }
        if n != 5 && n >= 4 {
            check_tight_irreducible(&format!("spm({n})"), &special_perfect_matching(n).unwrap())?;
        }
        if n >= 4 {
            check_tight_irreducible(&format!("xor({n})"), &xor_extend(&family_s(3).unwrap(), n - 3).unwrap())?;
        }
        let g = avsp_family(n).unwrap();
        ensure(g.is_partition() && g.is_tight() && g.is_irreducible(), || format!("avsp({n}) fails"))?;
    }
    check_tight_irreducible("homogeneous-6-4", &homogeneous_6_4())?;
    for n in 3..=6 {
        for q in 2..=5 {
            check_tight_irreducible(&format!("qary({n}, {q})"), &minimal_qary(n, q).unwrap())?;
        }
    }
    Ok(())
}

fn fib(k: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

fn size_laws() -> Outcome {
    let recheck = |label: String, f: &SubcubeCollection| {
        if f.len() <= 200 {
            check_tight_irreducible(&label, f)
        } else {
            Ok(())
        }
    };
    for n in 3..=20 {
        let f = family_s(n).unwrap();
        ensure(f.len() == 2 * n - 1, || format!("|s({n})| = {}", f.len()))?;
        recheck(format!("s({n})"), &f)?;
    }
    for n in (3..=19).step_by(2) {
        let f = lagarias_shor(n).unwrap();
        ensure(f.len() as u64 == fib(n + 1) + fib(n - 1) + 1, || format!("|lagarias-shor({n})| = {}", f.len()))?;
        recheck(format!("lagarias-shor({n})"), &f)?;
    }
    for n in [3, 5, 6, 7, 8] {
        let f = maximal_family(n).unwrap();
        ensure(f.len() == 5 << (n - 3), || format!("|maximal({n})| = {}", f.len()))?;
        recheck(format!("maximal({n})"), &f)?;
    }
    let s3 = family_s(3).unwrap();
    for n in 4..=16 {
        let f = xor_extend(&s3, n - 3).unwrap();
        ensure(f.points().len() == 1 << (n - 2), || format!("xor({n}) has {} points", f.points().len()))?;
        recheck(format!("xor({n})"), &f)?;
    }
    for n in 3..=6 {
        for q in 2..=5u8 {
            let f = minimal_qary(n, q).unwrap();
            let qq = q as usize;
            ensure(f.len() == (n - 1) * qq * (qq - 1) + 1, || format!("|qary({n}, {q})| = {}", f.len()))?;
            recheck(format!("qary({n}, {q})"), &f)?;
        }
    }
    for n in 1..=8 {
        for q in 2..=5u8 {
            let f = staircase_cover(n, q).unwrap();
            ensure(f.len() == (q as usize - 1) * n + 1, || format!("|staircase({n}, {q})| = {}", f.len()))?;
        }
    }
    let table = [4, 6, 7, 8, 10];
    for n in 3..=12 {
        let want = if n == 4 { 6 } else if n % 2 == 1 { (3 * n - 1) / 2 } else { 3 * n / 2 - 1 };
        let g = avsp_family(n).unwrap();
        ensure(g.len() == want && (n > 7 || g.len() == table[n - 3]), || format!("|avsp({n})| = {}", g.len()))?;
    }
    Ok(())
}

fn exact(r: &SearchReport) -> Result<Option<u64>, String> {
    ensure(r.complete, || format!("{} (n = {}) truncated", r.objective, r.n))?;
    Ok(r.optimum())
}

fn table_reproduction() -> Outcome {
    let c = SearchConstraints::default();
    let fixed = SearchConstraints { fix_first_subcube: true, ..Default::default() };
    let expect = |label: &str, got: Option<u64>, want: u64| ensure(got == Some(want), || format!("{label}: {got:?}, want {want}"));
    expect("min-size(3, 2)", exact(&min_size_search(3, 2, &c).unwrap())?, 5)?;
    expect("min-size(4, 2)", exact(&min_size_search(4, 2, &c).unwrap())?, 7)?;
    expect("min-size(3, 3)", exact(&min_size_search(3, 3, &c).unwrap())?, 13)?;
    for (n, want) in [(3, 2), (4, 4), (5, 8)] {
        expect(&format!("max-points({n})"), exact(&max_points_search(n, &c).unwrap())?, want)?;
    }
    expect("max-size(3)", exact(&max_size_search(3, &c).unwrap())?, 5)?;
    expect("max-size(4)", exact(&max_size_search(4, &c).unwrap())?, 9)?;
    let ten = SearchConstraints { min_size: Some(10), require_irreducible: true, prune_reducible_pairs: true, ..Default::default() };
    let mut found = 0;
    let st = enumerate_partitions(4, 2, &ten, |_| found += 1).unwrap();
    ensure(st.complete && found == 0, || "an irreducible partition of length 4 with ten members".into())?;
    let h = homogeneous_search(4, 3, &c).unwrap();
    ensure(h.status() == SearchStatus::Found && h.classes == Some(1), || "homogeneous(4, 3)".into())?;
    let h = homogeneous_search(6, 4, &fixed).unwrap();
    ensure(h.status() == SearchStatus::Found && h.classes == Some(1), || "homogeneous(6, 4)".into())?;
    for (n, k) in [(5, 2), (3, 1), (4, 1), (5, 1)] {
        let h = homogeneous_search(n, k, &c).unwrap();
        ensure(h.status() == SearchStatus::NoneExists, || format!("homogeneous({n}, {k}) exists"))?;
    }
    for (n, q) in [(2, 2), (3, 2), (2, 3)] {
        expect(&format!("min-cover({n}, {q})"), exact(&min_cover_search(n, q, &c).unwrap())?, (q as u64 - 1) * n as u64 + 1)?;
    }
    expect("avsp-min-size(3)", exact(&avsp_min_size_search(3, &c).unwrap())?, 4)?;
    expect("avsp-min-size(4)", exact(&avsp_min_size_search(4, &c).unwrap())?, 6)?;
    Ok(())
}

fn random_symmetry(rng: &mut StdRng, n: usize) -> CubeSymmetry {
    let mut coords: Vec<usize> = (0..n).collect();
    coords.shuffle(rng);
    let flips: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    CubeSymmetry::flips(n, &flips).compose(&CubeSymmetry::new(coords, vec![vec![0, 1]; n]).unwrap())
}

/// Splits and irreducible blocks laid over stars, at least twice, so the
/// pieces of the second step unite to a proper subcube.
fn random_reducible(rng: &mut StdRng, n: usize) -> SubcubeCollection {
    let mut members = vec![Subcube::full(2, n).unwrap()];
    let mut steps = 0;
    while steps < 2 || rng.gen_bool(0.6) {
        steps += 1;
        let open: Vec<usize> = (0..members.len()).filter(|&i| members[i].dimension() >= 1).collect();
        let Some(&i) = open.choose(rng) else { break };
        let m = members.swap_remove(i);
        let mut stars = m.star_positions();
        stars.shuffle(rng);
        if stars.len() >= 3 && rng.gen_bool(0.5) {
            let d = rng.gen_range(3..=stars.len().min(6));
            for t in family_s(d).unwrap().members() {
                let mut w = m.symbols();
                for (k, &p) in stars[..d].iter().enumerate() {
                    w[p] = t.symbol(k);
                }
                members.push(Subcube::from_symbols(2, &w).unwrap());
            }
        } else {
            members.push(m.with_symbol(stars[0], Some(0)).unwrap());
            members.push(m.with_symbol(stars[0], Some(1)).unwrap());
        }
    }
    SubcubeCollection::new(2, n, members).unwrap()
}

fn parity_split(g: &[&Subcube]) -> bool {
    let patterns: Vec<u64> = g.iter().map(|m| m.star_mask()).collect();
    patterns.iter().filter(|&&p| !patterns.iter().any(|&r| r != p && r & p == r)).all(|&p| {
        let members = g.iter().filter(|m| m.star_mask() == p);
        let even = members.clone().filter(|m| m.parity().unwrap() == Parity::Even).count();
        2 * even == members.count()
    })
}

/// Every binary partition of length `n`, by brute force over all subcubes.
fn all_partitions(n: usize) -> Vec<Vec<Subcube>> {
    let mut cubes = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let w: Vec<Symbol> = (0..n).map(|i| [Some(0), Some(1), None][code / 3usize.pow(i as u32) % 3]).collect();
        let s = Subcube::from_symbols(2, &w).unwrap();
        let set = s.points().iter().fold(0u64, |a, p| a | 1 << p.iter().fold(0, |x, &b| 2 * x + b as usize));
        cubes.push((s, set));
    }
    fn rec(cubes: &[(Subcube, u64)], full: u64, covered: u64, chosen: &mut Vec<Subcube>, out: &mut Vec<Vec<Subcube>>) {
        if covered == full {
            out.push(chosen.clone());
            return;
        }
        let low = 1u64 << (!covered & full).trailing_zeros();
        for (s, set) in cubes.iter().filter(|(_, set)| set & low != 0 && set & covered == 0) {
            chosen.push(*s);
            rec(cubes, full, covered | set, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    rec(&cubes, (1u64 << (1 << n)) - 1, 0, &mut Vec::new(), &mut out);
    out
}

/// A proper sub-collection of two or more members whose volume equals the
/// volume of its join.
fn subset_oracle_reducible(p: &[Subcube]) -> bool {
    let m = p.len();
    (1u32..(1 << m) - 1).filter(|s| s.count_ones() >= 2).any(|s| {
        let sub: Vec<&Subcube> = (0..m).filter(|&i| s >> i & 1 == 1).map(|i| &p[i]).collect();
        let join = sub.iter().skip(1).fold(*sub[0], |j, t| j.join(t).unwrap());
        sub.iter().map(|t| t.measure()).sum::<num_bigint::BigUint>() == join.measure()
    })
}

fn property_suites() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=8);
        let f = random_reducible(&mut rng, n);
        let v = test_irreducible(&f);
        let w = v.witness().ok_or_else(|| format!("no witness for {f}"))?;
        let g: Vec<&Subcube> = w.members.iter().map(|&i| &f.members()[i]).collect();
        ensure(verify_witness(f.members(), w) && parity_split(&g), || format!("parity split fails on {f}"))?;
    }
    let bases: Vec<Box<dyn Fn(usize) -> Option<SubcubeCollection>>> = vec![
        Box::new(|n| family_s(n).ok()),
        Box::new(|n| family_weight(n, WeightVariant::B).ok()),
        Box::new(|n| cubic(n | 1).ok()),
        Box::new(|n| lagarias_shor(n | 1).ok()),
        Box::new(|n| maximal_family(n.min(7)).ok()),
        Box::new(|n| min_dim_family(n).ok()),
        Box::new(|n| special_perfect_matching(n).ok()),
    ];
    for _ in 0..1000 {
        let n = rng.gen_range(3..=9);
        let Some(base) = bases.choose(&mut rng).unwrap()(n) else { continue };
        let f = random_symmetry(&mut rng, base.n()).apply_collection(&base).unwrap();
        ensure(is_irreducible(&f) && f.structure_flags().regular, || format!("{f} not regular"))?;
        let heavy = f.members().iter().any(|m| m.weight().unwrap() >= 2);
        ensure(f.n() < 4 || heavy, || format!("{f} has no member of weight two"))?;
    }
    let homogeneous = [
        fixture("spm-4"),
        fixture("homogeneous-6-4"),
        homogeneous_pump(&special_perfect_matching(4).unwrap()).unwrap(),
        homogeneous_pump(&homogeneous_6_4()).unwrap(),
    ];
    for i in 0..1000 {
        let base = &homogeneous[i % homogeneous.len()];
        let f = random_symmetry(&mut rng, base.n()).apply_collection(base).unwrap();
        let k = f.structure_flags().homogeneous_codim.ok_or("not homogeneous")? as u64;
        let mut want = vec![1u64];
        for j in 1..=f.n() as u64 {
            let prev = want[j as usize - 1];
            want.push(if j <= k { prev * (k - j + 1) / j } else { 0 });
        }
        ensure(f.weight_vector().unwrap().0 == want, || format!("weights of {f}"))?;
    }
    let expandable = [family_s(3).unwrap(), family_s(5).unwrap(), cubic(5).unwrap(), maximal_family(4).unwrap(), fixture("d5")];
    for base in &expandable {
        for q in 2..=4u8 {
            for _ in 0..50 {
                let maps = (0..base.n())
                    .map(|_| {
                        let mut m: Vec<u8> = (0..q).map(|v| (v > 0) as u8).collect();
                        m.shuffle(&mut rng);
                        m
                    })
                    .collect();
                let e = expand(base, &ExpansionMap::new(q, maps).unwrap()).unwrap();
                ensure(e.is_partition() && e.is_tight() && is_irreducible(&e), || format!("expansion of {base}"))?;
            }
        }
    }
    for n in 1..=3 {
        for p in all_partitions(n) {
            let f = SubcubeCollection::new(2, n, p.clone()).unwrap();
            ensure(is_irreducible(&f) != subset_oracle_reducible(&p), || format!("verdict differs on {f}"))?;
        }
    }
    Ok(())
}

fn bound_checks() -> Outcome {
    for (n, want) in [(7, "83"), (8, "166"), (9, "334")] {
        let got = bounds(n, 2).unwrap().max_size_upper.to_string();
        ensure(got == want, || format!("max-size bound at {n}: {got}"))?;
    }
    for n in 4..=10 {
        let lower = n + 3;
        let mut generated = vec![family_s(n).unwrap(), family_weight(n, WeightVariant::C).unwrap(), min_dim_family(n).unwrap()];
        generated.extend(maximal_family(n).ok());
        generated.extend(special_perfect_matching(n).ok());
        if n % 2 == 1 {
            generated.push(cubic(n).unwrap());
            generated.push(lagarias_shor(n).unwrap());
        }
        for f in &generated {
            ensure(f.len() >= lower, || format!("{f} below n + 3"))?;
        }
    }
    for n in 3..=12 {
        let g = avsp_family(n).unwrap();
        ensure(g.len() > n, || format!("avsp({n}) below n + 1"))?;
    }
    {
        let fx = "avsp-tight-3";
        let g = parse_avsp(fixtures::get(fx).unwrap().text).unwrap();
        ensure(g.len() > g.n(), || format!("{fx} below n + 1"))?;
    }
    for n in 3..=5 {
        let c = compress(&family_s(n).unwrap()).unwrap();
        ensure(!c.avsp.is_tight() || c.avsp.len() > n, || format!("compressed s({n}) below n + 1"))?;
    }
    let c = SearchConstraints::default();
    for (n, q) in [(2, 2), (3, 2), (2, 3)] {
        let r = min_cover_search(n, q, &c).unwrap();
        for cert in &r.certificates {
            ensure(cert.len() as u64 > (q as u64 - 1) * n as u64, || format!("cover ({n}, {q}) too small"))?;
        }
    }
    for n in 1..=8 {
        for q in 2..=5 {
            let f = staircase_cover(n, q).unwrap();
            ensure(f.len() > (q as usize - 1) * n, || format!("staircase ({n}, {q})"))?;
        }
    }
    Ok(())
}

fn perezhogin_chain() -> Outcome {
    for (start, steps) in [(3usize, 2usize), (6, 1)] {
        let mut f = maximal_family(start).unwrap();
        for _ in 0..steps {
            let g = perezhogin_step(&f).unwrap();
            ensure(has_complementation_property(&g), || format!("complementation at length {}", g.n()))?;
            let anchor = format!("{}*", "0".repeat(g.n() - 1));
            ensure(g.members().iter().any(|m| m.to_string() == anchor), || format!("{anchor} missing"))?;
            for d in 0..=f.n() as u32 {
                let count = |h: &SubcubeCollection| h.members().iter().filter(|m| m.dimension() == d).count();
                ensure(count(&g) == 4 * count(&f), || format!("dimension {d} at length {}", g.n()))?;
            }
            ensure(is_irreducible(&g), || format!("step to length {} is reducible", g.n()))?;
            f = g;
        }
        if start == 6 {
            ensure(f.len() == 160 && f.n() == 8, || format!("chain ends with {} members", f.len()))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("fixture equality", fixture_equality, Duration::from_secs(1)),
        ("verification stack", verification_stack, Duration::from_secs(60)),
        ("size laws", size_laws, Duration::from_secs(60)),
        ("table reproduction by search", table_reproduction, Duration::from_secs(35 * 60)),
        ("property suites", property_suites, Duration::from_secs(10 * 60)),
        ("bound checks", bound_checks, Duration::from_secs(10)),
        ("perezhogin chain", perezhogin_chain, Duration::from_secs(10 * 60)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| ensure(elapsed <= limit, || format!("took longer than {limit:?}")));
        match outcome {
            Ok(()) => println!("criterion {}: PASS {name} ({:.2} s)", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({:.2} s): {e}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
