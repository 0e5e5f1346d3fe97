use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use polarcodes::bounds::{
    additive_bound, cvetkovic_bound, gamma_h_spectrum, gamma_w_spectrum, hermitian_forms_graph_bounds,
    quotient_matrix_w5, second_subconstituent_spectrum, upper_sym3, SpectrumReport,
};
use polarcodes::codes::{herm2, is_maximal, ncode_from_partial_spread, sym2_basic, sym2_extended, RankCode, SpreadProvider};
use polarcodes::forms::FormKind;
use polarcodes::graphs::{
    build_forms_graph_capped, class_row_sums, lemma_construction_lines, lemma_invertible_lines, lemma_rank2_neighbors,
    orbit_partition_w5, spectrum_check, verify_equitable, LemmaCheck, OrbitPartition, ANNIHILATION_SEED,
};
use polarcodes::io::{read_code, write_code, write_spread};
use polarcodes::spreads::herm_partial_spread;
use polarcodes::Error;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "polarcodes", version, about = "Rank-distance codes from polar spaces")]
struct Cli {
    /// Worker threads for verification (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Reserved; every construction is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "sym2-basic")]
    Sym2Basic,
    #[value(name = "sym2-ext")]
    Sym2Ext,
    Herm2,
    #[value(name = "herm-ncode")]
    HermNcode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sym,
    Herm,
}

impl Kind {
    fn form(self) -> FormKind {
        match self {
            Kind::Sym => FormKind::Sym,
            Kind::Herm => FormKind::Herm,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write it to a file.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        q: u32,
        /// Half the matrix order for herm-ncode.
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// herm2 spread: field-reduction, additive, or a path to a spread file.
        #[arg(long, default_value = "field-reduction")]
        provider: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-read a code file and recompute its invariants.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        maximality: bool,
        /// Skip the distance recomputation.
        #[arg(long)]
        trust: bool,
        #[arg(long)]
        expect_distance: Option<u32>,
    },
    /// Eigenvalue and counting bounds.
    Bounds {
        #[arg(long, value_enum)]
        family: Kind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
        /// Minimum distance used by the additive bound.
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Check a predicted spectrum against the forms graph.
    Spectrum {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// Allow up to 100000 vertices.
        #[arg(long)]
        big: bool,
    },
    /// Orbit partition of the S_{3,q} forms graph.
    Orbits {
        #[arg(long)]
        q: u32,
    },
    /// Write a Hermitian partial spread.
    Spread {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    parameters: Value,
    results: Value,
    /// Milliseconds.
    wall_time: u64,
    artifact_paths: Vec<String>,
}

struct Outcome {
    results: Map<String, Value>,
    artifacts: Vec<String>,
    ok: bool,
}

impl Outcome {
    fn new() -> Self {
        Outcome { results: Map::new(), artifacts: Vec::new(), ok: true }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.into(), v.into());
    }
}

/// Integers that fit stay numbers; everything else becomes an exact string.
fn exact(x: impl ToString) -> Value {
    let s = x.to_string();
    match s.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(s),
    }
}

fn spectrum_json(s: &SpectrumReport) -> Value {
    json!({
        "source": s.source,
        "vertices": exact(&s.vertices),
        "valency": exact(&s.valency),
        "eigenvalues": s.eigenvalues.iter().map(exact).collect::<Vec<_>>(),
        "multiplicities": s.multiplicities.iter().map(exact).collect::<Vec<_>>(),
    })
}

fn lemma_json(l: &LemmaCheck) -> Value {
    json!({ "name": l.name, "passed": l.passed, "detail": l.detail })
}

fn code_json(out: &mut Outcome, code: &RankCode) {
    let space = code.space();
    out.set("kind", format!("{:?}", space.kind()).to_lowercase());
    out.set("n", space.n());
    out.set("field_order", space.q());
    out.set("size", code.len());
    out.set("provenance", code.provenance().to_string());
    let census: Map<String, Value> = code.rank_census().into_iter().map(|(r, c)| (r.to_string(), json!(c))).collect();
    out.set("rank_census", census);
}

fn provider(arg: &str) -> SpreadProvider {
    match arg {
        "field-reduction" => SpreadProvider::FieldReduction,
        "additive" => SpreadProvider::Additive,
        path => SpreadProvider::File(PathBuf::from(path)),
    }
}

fn construct(family: Family, q: u32, m: u32, prov: &str, out_path: &PathBuf) -> Result<Outcome, Error> {
    let mut code = match family {
        Family::Sym2Basic => sym2_basic(q)?,
        Family::Sym2Ext => sym2_extended(q)?,
        Family::Herm2 => herm2(q, &provider(prov))?,
        Family::HermNcode => ncode_from_partial_spread(&herm_partial_spread(m, q)?)?,
    };
    let mut out = Outcome::new();
    let d = code.verify()?;
    code_json(&mut out, &code);
    out.set("min_distance", d);
    let space = code.space();
    if space.size() <= 1 << 62 {
        let additive = additive_bound(space.kind(), space.n() as u32, d, space.q())?;
        out.set("additive_bound", exact(&additive));
    }
    write_code(&code, out_path)?;
    out.artifacts.push(out_path.display().to_string());
    Ok(out)
}

fn verify(input: &PathBuf, maximality: bool, trust: bool, expect: Option<u32>) -> Result<Outcome, Error> {
    let mut code = read_code(input, trust)?;
    let mut out = Outcome::new();
    code_json(&mut out, &code);
    let d = if trust { None } else { Some(code.verify()?) };
    out.set("min_distance", d.map_or(Value::Null, |d| json!(d)));
    if let Some(want) = expect {
        let d = match d {
            Some(d) => d,
            None => code.verify()?,
        };
        out.set("expected_distance", want);
        out.ok &= d == want;
    }
    if maximality {
        let m = is_maximal(&code)?;
        out.set("maximal", m);
        out.ok &= m;
    }
    Ok(out)
}

fn bounds(kind: Kind, n: u32, q: u32, d: u32) -> Result<Outcome, Error> {
    let mut out = Outcome::new();
    let spectrum = match kind {
        Kind::Sym => gamma_w_spectrum(n, q)?,
        Kind::Herm => gamma_h_spectrum(n, q)?,
    };
    spectrum.check_moments()?;
    out.set("family", match kind {
        Kind::Sym => "sym",
        Kind::Herm => "herm",
    });
    out.set("n", n);
    out.set("q", q);
    out.set("eigenvalues", spectrum.eigenvalues.iter().map(exact).collect::<Vec<_>>());
    out.set("multiplicities", spectrum.multiplicities.iter().map(exact).collect::<Vec<_>>());
    let hoffman = spectrum.hoffman();
    let mut b = Map::new();
    b.insert("additive".into(), exact(additive_bound(kind.form(), n, d, q)?));
    b.insert(
        "cvetkovic".into(),
        if n >= 2 { exact(cvetkovic_bound(kind.form(), n, q)?) } else { Value::Null },
    );
    b.insert("hoffman".into(), exact(hoffman.floor().to_integer()));
    b.insert("hoffman_exact".into(), exact(&hoffman));
    b.insert(
        "upper_sym3".into(),
        if matches!(kind, Kind::Sym) && n == 3 { exact(upper_sym3(q)) } else { Value::Null },
    );
    if matches!(kind, Kind::Herm) && n >= 2 {
        let (_, forms) = hermitian_forms_graph_bounds(n, q)?;
        b.insert("hoffman_forms_graph".into(), exact(forms));
    }
    out.set("bounds", b);
    Ok(out)
}

fn spectrum(kind: Kind, n: usize, q: u32, big: bool) -> Result<Outcome, Error> {
    let predicted = match kind {
        Kind::Sym if n == 3 => second_subconstituent_spectrum(q)?,
        Kind::Sym => return Err(Error::BadParams("a predicted spectrum is available for sym only at n = 3".into())),
        Kind::Herm => hermitian_forms_graph_bounds(n as u32, q)?.0,
    };
    let g = build_forms_graph_capped(kind.form(), n, q, big)?;
    let check = spectrum_check(&g, &predicted, ANNIHILATION_SEED)?;
    let mut out = Outcome::new();
    out.set("vertices", g.vertex_count());
    out.set("valency", g.valency().map_or(Value::Null, |v| json!(v)));
    out.set("predicted", spectrum_json(&predicted));
    let moments: Vec<Value> = check
        .moments
        .iter()
        .map(|(k, trace, predicted)| json!({ "k": k, "trace": exact(trace), "predicted": exact(predicted) }))
        .collect();
    out.set("moments", moments);
    out.set("moments_ok", check.moments_ok);
    out.set("annihilation_ok", check.annihilation_ok);
    out.set("passed", check.passed());
    out.ok = check.passed();
    Ok(out)
}

fn orbits(q: u32) -> Result<Outcome, Error> {
    let p = orbit_partition_w5(q)?;
    let g = build_forms_graph_capped(FormKind::Sym, 3, q, true)?;
    let b = quotient_matrix_w5(q)?;
    let sizes = p.sizes();
    let expected = OrbitPartition::expected_sizes(q);
    let equitable = verify_equitable(&g, &p, &b)?;
    let rows = class_row_sums(&g, &p)?;
    let mut out = Outcome::new();
    let classes: Vec<Value> = p
        .classes()
        .iter()
        .zip(&sizes)
        .zip(&rows)
        .map(|((c, size), row)| json!({ "class": c.name(), "size": size, "row_sums": row }))
        .collect();
    out.set("classes", classes);
    out.set("sizes_match", sizes == expected);
    out.set("quotient", b.b.clone());
    out.set("equitable", equitable);
    let mut lemmas = vec![lemma_construction_lines(q)?];
    if q % 2 == 0 {
        lemmas.push(lemma_rank2_neighbors(q)?);
    } else {
        lemmas.push(lemma_invertible_lines(q, polarcodes::graphs::HARD_CAP as usize)?);
    }
    out.set("lemmas", lemmas.iter().map(lemma_json).collect::<Vec<_>>());
    out.ok = sizes == expected && equitable && lemmas.iter().all(|l| l.passed);
    Ok(out)
}

fn spread(m: u32, q: u32, path: &PathBuf) -> Result<Outcome, Error> {
    let s = herm_partial_spread(m, q)?;
    s.verify()?;
    let mut out = Outcome::new();
    out.set("size", s.len());
    out.set("all_generators", s.members.iter().all(|g| s.space.is_generator(g)));
    out.set("pairwise_disjoint", true);
    out.set("provenance", s.provenance.clone());
    write_spread(&s, path)?;
    out.artifacts.push(path.display().to_string());
    Ok(out)
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::ParseError { .. }
            | Error::BadParams(_)
            | Error::UnsupportedQ(_)
            | Error::UnsupportedField { .. }
            | Error::Io(_)
            | Error::BadProvider(_)
            | Error::TooLarge(_)
            | Error::AmbientTooLarge(_)
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot set thread count: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let (name, parameters, outcome) = match &cli.command {
        Command::Construct { family, q, m, provider, out } => (
            "construct",
            json!({
                "family": family.to_possible_value().map(|v| v.get_name().to_string()),
                "q": q, "m": m, "provider": provider, "out": out.display().to_string(),
            }),
            construct(*family, *q, *m, provider, out),
        ),
        Command::Verify { input, maximality, trust, expect_distance } => (
            "verify",
            json!({ "in": input.display().to_string(), "maximality": maximality, "trust": trust, "expect_distance": expect_distance }),
            verify(input, *maximality, *trust, *expect_distance),
        ),
        Command::Bounds { family, n, q, d } => (
            "bounds",
            json!({ "family": family.to_possible_value().map(|v| v.get_name().to_string()), "n": n, "q": q, "d": d }),
            bounds(*family, *n, *q, *d),
        ),
        Command::Spectrum { kind, n, q, big } => (
            "spectrum",
            json!({ "kind": kind.to_possible_value().map(|v| v.get_name().to_string()), "n": n, "q": q, "big": big }),
            spectrum(*kind, *n, *q, *big),
        ),
        Command::Orbits { q } => ("orbits", json!({ "q": q }), orbits(*q)),
        Command::Spread { m, q, out } => (
            "spread",
            json!({ "m": m, "q": q, "out": out.display().to_string() }),
            spread(*m, *q, out),
        ),
    };
    let (results, artifacts, code) = match outcome {
        Ok(o) => {
            let code = if o.ok { 0 } else { 2 };
            (Value::Object(o.results), o.artifacts, code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = if usage_error(&e) { 1 } else { 2 };
            (json!({ "error": e.to_string() }), Vec::new(), code)
        }
    };
    let report = RunReport {
        command: name.into(),
        parameters,
        results,
        wall_time: start.elapsed().as_millis() as u64,
        artifact_paths: artifacts,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    ExitCode::from(code)
}
