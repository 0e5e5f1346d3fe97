//! Exit criteria. Each criterion prints one PASS/FAIL line; the process exits
//! nonzero if any criterion fails or overruns its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use polarcodes::bounds::{
    additive_bound, cvetkovic_bound, hermitian_forms_graph_bounds, quotient_matrix_w5, second_subconstituent_spectrum,
    upper_sym3, SpectrumReport,
};
use polarcodes::codes::{herm2, is_maximal, ncode_from_partial_spread, sym2_basic, sym2_extended, SpreadProvider};
use polarcodes::field::Field;
use polarcodes::forms::{FormKind, MatrixSpace};
use polarcodes::graphs::{build_forms_graph, orbit_partition_w5, verify_equitable, verify_spectrum, OrbitPartition};
use polarcodes::polar::PolarSpace;
use polarcodes::spreads::herm_partial_spread;

type Outcome = Result<(bool, String), polarcodes::Error>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn spectrum_is(s: &SpectrumReport, eig: &[i64], mult: &[i64]) -> bool {
    s.eigenvalues == eig.iter().map(|&x| BigRational::from_integer(big(x))).collect::<Vec<_>>()
        && s.multiplicities == mult.iter().map(|&x| big(x)).collect::<Vec<_>>()
}

fn c1() -> Outcome {
    let mut code = sym2_basic(2)?;
    let d = code.verify()?;
    let maximal = is_maximal(&code)?;
    Ok((code.len() == 22 && d == 2 && maximal, format!("size {} distance {d} maximal {maximal}", code.len())))
}

fn c2() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [3u32, 4, 5] {
        let start = Instant::now();
        let code = sym2_extended(q)?;
        let d = code.verified_distance();
        let elapsed = start.elapsed();
        let want = (q as usize).pow(4) + (q as usize).pow(3) + 1;
        let additive = additive_bound(FormKind::Sym, 3, 2, q)?;
        let pass = code.len() == want
            && d == Some(2)
            && big(code.len() as i64) > additive
            && elapsed < Duration::from_secs(10);
        ok &= pass;
        notes.push(format!("q={q}: size {} (want {want}) distance {d:?} additive {additive} {elapsed:.2?}", code.len()));
    }
    Ok((ok, notes.join("; ")))
}

fn c3() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [2usize, 3] {
        let start = Instant::now();
        let code = herm2(q as u32, &SpreadProvider::FieldReduction)?;
        let elapsed = start.elapsed();
        let want = q.pow(6) + q * (q - 1) * (q.pow(4) + q * q + 1) / 2;
        let pass = code.len() == want
            && code.verified_distance() == Some(2)
            && code.space().field().q() as usize == q * q
            && (q != 3 || elapsed < Duration::from_secs(30));
        ok &= pass;
        notes.push(format!("q={q}: size {} (want {want}) distance {:?} {elapsed:.2?}", code.len(), code.verified_distance()));
    }
    Ok((ok, notes.join("; ")))
}

fn c4() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (m, q) in [(1u32, 2u32), (1, 3), (1, 4), (1, 5), (2, 2)] {
        let start = Instant::now();
        let s = herm_partial_spread(m, q)?;
        let generators = s.members.iter().all(|g| s.space.is_generator(g));
        let disjoint = s.verify().is_ok();
        let elapsed = start.elapsed();
        let (qi, mi) = (q as usize, m);
        let want = (3 * qi.pow(4 * mi - 2) - qi.pow(2 * mi - 1)) / 2 + 1;
        let pass = s.len() == want && generators && disjoint && ((m, q) != (2, 2) || elapsed < Duration::from_secs(60));
        ok &= pass;
        notes.push(format!("({m},{q}): {} members (want {want}) {elapsed:.2?}", s.len()));
    }
    Ok((ok, notes.join("; ")))
}

fn c5() -> Outcome {
    let s = herm_partial_spread(2, 2)?;
    let code = ncode_from_partial_spread(&s)?;
    let space = code.space();
    let shape = space.kind() == FormKind::Herm && space.n() == 6 && space.q() == 2;
    let words = code.words();
    let full_rank = (0..words.len()).all(|i| (i + 1..words.len()).all(|j| words[i].sub(&words[j]).rank() == 6));
    let want = (3 * 64 - 8) / 2;
    Ok((
        shape && code.len() == want && full_rank,
        format!("H_6,4 code of size {} (want {want}), all differences rank 6: {full_rank}", code.len()),
    ))
}

fn c6() -> Outcome {
    let w2 = second_subconstituent_spectrum(2)?;
    let w3 = second_subconstituent_spectrum(3)?;
    let (h, _) = hermitian_forms_graph_bounds(3, 2)?;
    let literal = spectrum_is(&w2, &[7, 3, -1, -5], &[1, 21, 35, 7])
        && spectrum_is(&w3, &[26, 8, -1, -10], &[1, 156, 494, 78])
        && spectrum_is(&h, &[21, -11, 5, -3], &[1, 21, 210, 280]);
    let g2 = verify_spectrum(&build_forms_graph(FormKind::Sym, 3, 2)?, &w2)?;
    let g3 = verify_spectrum(&build_forms_graph(FormKind::Sym, 3, 3)?, &w3)?;
    let gh = verify_spectrum(&build_forms_graph(FormKind::Herm, 3, 2)?, &h)?;
    Ok((
        literal && g2 && g3 && gh,
        format!("formulas {literal}; W q=2 {w2} {g2}; W q=3 {w3} {g3}; H(3,2) {h} {gh}"),
    ))
}

fn c7() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (q, classes) in [(2u32, 5usize), (3, 7)] {
        let g = build_forms_graph(FormKind::Sym, 3, q)?;
        let p = orbit_partition_w5(q)?;
        let sizes = p.sizes();
        let equitable = verify_equitable(&g, &p, &quotient_matrix_w5(q)?)?;
        let pass = sizes.len() == classes && sizes == OrbitPartition::expected_sizes(q) && equitable;
        ok &= pass;
        notes.push(format!("q={q}: sizes {sizes:?} equitable {equitable}"));
    }
    Ok((ok, notes.join("; ")))
}

fn c8() -> Outcome {
    let additive = additive_bound(FormKind::Sym, 3, 2, 2)?;
    let constructed = big(sym2_basic(2)?.len() as i64);
    let upper = upper_sym3(2);
    let cvet = cvetkovic_bound(FormKind::Sym, 3, 2)?;
    let (_, hoffman) = hermitian_forms_graph_bounds(3, 2)?;
    let closed = big(16 * 33 / 3);
    let chain = additive == big(16)
        && additive < constructed
        && constructed == big(22)
        && constructed == upper
        && upper <= cvet
        && cvet == big(36);
    Ok((
        chain && hoffman == big(176) && hoffman == closed,
        format!("additive {additive} < constructed {constructed} = upper {upper} <= cvetkovic {cvet}; hoffman {hoffman}"),
    ))
}

fn bijection_exhaustive(kind: FormKind, n: usize, q: u32) -> (bool, usize) {
    let space = MatrixSpace::new(kind, n, q).expect("space");
    let polar = space.polar_space();
    let mats: Vec<_> = space.iter().collect();
    let gens: Vec<_> = mats.iter().map(|m| polar.l_map(m).expect("in space")).collect();
    let mut pairs = 0;
    let ok = (0..mats.len()).all(|i| {
        (0..mats.len()).all(|j| {
            pairs += 1;
            let proj = gens[i].intersect(&gens[j]).proj_dim();
            proj == n as isize - 1 - mats[i].sub(&mats[j]).rank() as isize
        })
    });
    (ok, pairs)
}

fn c9() -> Outcome {
    let (s, sp) = bijection_exhaustive(FormKind::Sym, 3, 2);
    let (h, hp) = bijection_exhaustive(FormKind::Herm, 2, 2);
    Ok((s && h && sp == 64 * 64 && hp == 16 * 16, format!("S_3,2 {sp} pairs {s}; H_2,4 {hp} pairs {h}")))
}

fn point_sizes(n: usize, q: usize) -> Vec<usize> {
    let (qn, qn1) = (q.pow(n as u32), q.pow(n as u32 - 1));
    let p0 = (qn - 1) * (qn1 - 1) / (q - 1);
    if q % 2 == 0 {
        vec![p0, qn1 * (qn - 1)]
    } else {
        vec![p0, qn1 * (qn - 1) / 2, qn1 * (qn - 1) / 2]
    }
}

fn line_sizes(q: usize) -> [usize; 3] {
    let q3 = q * q * q - 1;
    if q % 2 == 0 {
        [q * q * q3, q * (q * q - 1) * q3, q * q * (q * q - 1) * q3]
    } else {
        [q * q * q * (q - 1) * q3 / 2, q * (q * q - 1) * q3, q * q * q * (q + 1) * q3 / 2]
    }
}

fn c10() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [2u32, 3] {
        let w = PolarSpace::symplectic(3, &Field::of_order(q)?);
        let mut points = vec![0usize; 3];
        for p in w.points_off_specials() {
            points[w.classify_point(&p)? as usize] += 1;
        }
        let classes = if q % 2 == 0 { 2 } else { 3 };
        let extra_empty = points[classes..].iter().all(|&c| c == 0);
        points.truncate(classes);
        let mut lines = [0usize; 3];
        for l in w.lines_off_specials() {
            lines[w.classify_line_w5(&l)? as usize] += 1;
        }
        let literal_points: &[usize] = if q == 2 { &[21, 28] } else { &[104, 117, 117] };
        let literal_lines = if q == 2 { [28, 42, 84] } else { [702, 624, 1404] };
        let pass = extra_empty
            && points == point_sizes(3, q as usize)
            && points == literal_points
            && lines == line_sizes(q as usize)
            && lines == literal_lines;
        ok &= pass;
        notes.push(format!("q={q}: points {points:?} lines {lines:?}"));
    }
    Ok((ok, notes.join("; ")))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "basic 2-code of S_3,2", limit: Some(Duration::from_secs(1)), run: c1 },
        Criterion { id: 2, title: "extended 2-codes of S_3,q", limit: Some(Duration::from_secs(30)), run: c2 },
        Criterion { id: 3, title: "Hermitian 2-codes via field reduction", limit: None, run: c3 },
        Criterion { id: 4, title: "Hermitian partial spreads", limit: None, run: c4 },
        Criterion { id: 5, title: "6-code of H_6,4 from a partial spread", limit: None, run: c5 },
        Criterion { id: 6, title: "second subconstituent spectra", limit: Some(Duration::from_secs(120)), run: c6 },
        Criterion { id: 7, title: "equitable orbit partition", limit: None, run: c7 },
        Criterion { id: 8, title: "bound chain", limit: None, run: c8 },
        Criterion { id: 9, title: "matrix/generator bijection", limit: None, run: c9 },
        Criterion { id: 10, title: "point and line census", limit: None, run: c10 },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = c.limit.map_or(true, |l| elapsed < l);
        let (pass, detail) = match outcome {
            Ok((pass, detail)) => (pass && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let limit = c.limit.map_or(String::new(), |l| format!(" limit {l:?}"));
        println!(
            "criterion {:>2} {} | {} | {} | {elapsed:.2?}{limit}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            detail
        );
        if !pass {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
