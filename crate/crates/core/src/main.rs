use clap::{Parser, Subcommand};
use qwedge::coeff::{QSeries, RatQ};
use qwedge::crystal::{letter_name, AffineType, Elem, Family};
use qwedge::dtwo;
use qwedge::fock::Fock;
use qwedge::io;
use qwedge::twopoint::TwoPoint;
use qwedge::verify::{self, Config};
use qwedge::wedge::{Engine, Gen};
use qwedge::young::Young;
use qwedge::Error;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qwedge", about = "q-wedge Fock spaces over perfect crystals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// a1, a2even, b1, a2odd, d1, d2 or a1k
    #[arg(long = "type", global = true)]
    ty: Option<String>,
    #[arg(long, global = true)]
    rank: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    level: usize,
    #[arg(long, global = true, default_value_t = 0)]
    kappa: usize,
    #[arg(long, global = true, default_value_t = 0)]
    m: i64,
    #[arg(long, global = true, default_value_t = 3)]
    delta_degree: i64,
    #[arg(long, short = 'T', global = true, default_value_t = 4)]
    worder: usize,
    #[arg(long, short = 'Q', global = true, default_value_t = 20)]
    qorder: i64,
    #[arg(long, global = true, default_value_t = 2)]
    window: i64,
    #[arg(long, global = true, default_value_t = 20)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Straighten a wedge vector read from JSON.
    Straighten {
        #[arg(long)]
        input: String,
    },
    /// Apply e_i, f_i, t_i or B_n to a Fock vector (defaults to |m⟩).
    FockAct {
        #[arg(long)]
        op: String,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long)]
        input: Option<String>,
    },
    /// Boson commutator γ_n.
    Gamma {
        #[arg(long)]
        n: i64,
    },
    Twopoint,
    /// Young wall action on a diagram such as "5,3,1".
    Young {
        #[arg(long)]
        n: usize,
        /// e, f, t, B or norm
        #[arg(long)]
        op: String,
        #[arg(long)]
        i: Option<usize>,
        /// boson index for op B
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        boson: i64,
        #[arg(long, default_value = "")]
        diagram: String,
    },
    Dtwo {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// one of the dtwo checks, or all
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// Crystal graph, energy and ground-state data.
    Tables,
    /// Run acceptance suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

enum Fail {
    Usage(String),
    Contradiction(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Invalid(_) | Error::Unsupported(_) | Error::Domain(_) => Fail::Usage(e.to_string()),
            _ => Fail::Contradiction(e.to_string()),
        }
    }
}

type Out = std::result::Result<(Value, bool), Fail>;

impl Cli {
    fn affine(&self) -> std::result::Result<AffineType, Fail> {
        let tag = self.ty.as_deref().ok_or_else(|| Fail::Usage("--type is required".into()))?;
        let f = Family::parse(tag)?;
        Ok(AffineType::new(f, self.rank.unwrap_or(f.min_rank()), self.level)?)
    }

    fn fock(&self) -> std::result::Result<Fock, Fail> {
        Ok(Fock::new(Engine::new(self.affine()?), self.kappa)?)
    }
}

/// Reads JSON input; the report of an earlier command is accepted too.
fn read<T: for<'de> serde::Deserialize<'de>>(path: &str) -> std::result::Result<T, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
    let mut v: Value = io::parse_json(&text)?;
    if let Some(r) = v.get_mut("result") {
        v = r.take();
    }
    serde_json::from_value(v).map_err(|e| Fail::Usage(format!("{path}: {e}")))
}

fn straighten(cli: &Cli, input: &str) -> Out {
    let e = Engine::new(cli.affine()?);
    let ts: Vec<io::WireTerm> = read(input)?;
    let v = io::wedge_from_wire(&ts)?;
    let w = e.straighten(&v);
    Ok((json!({ "type": e.t.name(), "identity": w == v, "result": io::wedge_to_wire(&w) }), true))
}

fn index(i: Option<usize>, what: &str) -> std::result::Result<usize, Fail> {
    i.ok_or_else(|| Fail::Usage(format!("{what} needs --i")))
}

fn fock_act(cli: &Cli, op: &str, i: Option<usize>, n: Option<i64>, input: Option<&str>) -> Out {
    let fk = cli.fock()?;
    let v = match input {
        Some(p) => {
            let v = io::fock_from_wire(&read(p)?)?;
            fk.check_canonical(&v)?;
            v
        }
        None => fk.vacuum(cli.m),
    };
    let r = match op {
        "e" => fk.e_act(index(i, "e")?, &v),
        "f" => fk.f_act(index(i, "f")?, &v)?,
        "t" => fk.act(Gen::T(index(i, "t")?, n.unwrap_or(1)), &v)?,
        "B" | "b" => fk.boson_act(n.ok_or_else(|| Fail::Usage("B needs --n".into()))?, &v)?,
        other => return Err(Fail::Usage(format!("unknown op {other}"))),
    };
    Ok((json!({ "type": fk.eng.t.name(), "kappa": fk.kappa, "result": io::fock_to_wire(&r) }), true))
}

fn series_text(x: &RatQ, order: i64) -> String {
    let s = QSeries::from_ratq(x, order);
    let mut parts: Vec<String> = s.terms().iter().map(|(e, c)| format!("{c}q^{e}")).collect();
    parts.push(format!("O(q^{order})"));
    parts.join(" + ").replace("+ -", "- ")
}

fn gamma(cli: &Cli, n: i64) -> Out {
    let fk = cli.fock()?;
    let g = fk.gamma(n)?;
    Ok((
        json!({ "type": fk.eng.t.name(), "kappa": fk.kappa, "n": n, "gamma": &g, "text": g.to_string(), "series": series_text(&g, cli.qorder) }),
        true,
    ))
}

fn twopoint(cli: &Cli) -> Out {
    let tp = TwoPoint::new(cli.affine()?, cli.kappa)?;
    let r = tp.report(cli.worder, cli.qorder)?;
    let ok = r.recurrence_ok && r.factorization_ok && r.residual_order > cli.worder;
    Ok((serde_json::to_value(r).expect("report serializes"), ok))
}

fn parse_diagram(s: &str) -> std::result::Result<Vec<i64>, Fail> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<i64>().map_err(|_| Fail::Usage(format!("bad diagram entry {p}"))))
        .collect()
}

fn young(n: usize, op: &str, i: Option<usize>, boson: i64, diagram: &str) -> Out {
    let y = Young::new(n)?;
    let d = parse_diagram(diagram)?;
    if d.windows(2).any(|w| w[0] < w[1]) || d.iter().any(|&r| r <= 0) {
        return Err(Fail::Usage("diagram rows must be positive and non-increasing".into()));
    }
    let result = match op {
        "norm" => return Ok((json!({ "n": n, "diagram": d, "norm": y.norm(&d), "text": y.norm(&d).to_string() }), true)),
        "e" => y.act(Gen::E(index(i, "e")?), &d)?,
        "f" => y.act(Gen::F(index(i, "f")?), &d)?,
        "t" => y.act(Gen::T(index(i, "t")?, 1), &d)?,
        "B" | "b" => y.boson_image(&y.fock()?, boson, &d)?,
        other => return Err(Fail::Usage(format!("unknown op {other}"))),
    };
    Ok((json!({ "n": n, "diagram": d, "result": io::diagrams_to_wire(&result) }), true))
}

fn dtwo_cmd(n: usize, check: &str) -> Out {
    let names: Vec<&str> = if check == "all" { dtwo::CHECKS.to_vec() } else { vec![check] };
    let mut reports = Vec::new();
    for c in names {
        reports.push(dtwo::run_check(n, c, None)?);
    }
    let ok = reports.iter().all(|r| r.ok);
    Ok((json!({ "n": n, "ok": ok, "checks": reports }), ok))
}

fn tables(cli: &Cli) -> Out {
    let types: Vec<AffineType> = match cli.ty {
        Some(_) => vec![cli.affine()?],
        None => Family::all().iter().map(|&f| AffineType::minimal(f)).collect(),
    };
    let mut out = Vec::new();
    for t in types {
        let ls = t.letters();
        let names: Vec<String> = ls.iter().map(|&j| letter_name(j)).collect();
        let h: Vec<Vec<i64>> = ls.iter().map(|&a| ls.iter().map(|&b| t.energy_cl(a, b)).collect()).collect();
        let l: Vec<Value> = ls.iter().map(|&j| json!([letter_name(j), t.grade_l(Elem::new(j, 0))])).collect();
        let edges: Vec<Value> = t.arrows().iter().map(|a| json!({ "i": a.i, "from": letter_name(a.from), "to": letter_name(a.to), "dz": a.dz })).collect();
        let mut ground = Vec::new();
        for kappa in t.kappas() {
            let (p, c) = t.period(kappa)?;
            let gs: Vec<String> = (0..p.max(1)).map(|m| t.ground(kappa, m).map(|b| b.to_string())).collect::<qwedge::Result<_>>()?;
            let lam: Vec<String> = (0..p.max(1)).map(|m| t.lambda(kappa, m).map(|w| w.to_string())).collect::<qwedge::Result<_>>()?;
            ground.push(json!({ "kappa": kappa, "period": p, "z_shift": c, "ground": gs, "lambda": lam }));
        }
        out.push(json!({ "type": t.name(), "letters": names, "edges": edges, "H": h, "l": l, "ground_states": ground }));
    }
    Ok((Value::Array(out), true))
}

fn verify_cmd(cli: &Cli, suite: &str) -> Out {
    let ks = verify::suite_criteria(suite).ok_or_else(|| Fail::Usage(format!("unknown suite {suite}")))?;
    let cfg = Config {
        seed: cli.seed,
        window: cli.window,
        delta_degree: cli.delta_degree,
        worder: cli.worder,
        qorder: cli.qorder,
        only: if cli.ty.is_some() { Some(cli.affine()?) } else { None },
    };
    let mut all = Vec::new();
    for k in ks {
        all.extend(verify::criterion(k, &cfg)?);
    }
    let ok = all.iter().all(|c| c.ok);
    Ok((json!({ "suite": suite, "ok": ok, "checks": all }), ok))
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Straighten { input } => straighten(cli, input),
        Cmd::FockAct { op, i, n, input } => fock_act(cli, op, *i, *n, input.as_deref()),
        Cmd::Gamma { n } => gamma(cli, *n),
        Cmd::Twopoint => twopoint(cli),
        Cmd::Young { n, op, i, boson, diagram } => young(*n, op, *i, *boson, diagram),
        Cmd::Dtwo { n, check } => dtwo_cmd(*n, check),
        Cmd::Tables => tables(cli),
        Cmd::Verify { suite } => verify_cmd(cli, suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, ok)) => {
            let text = serde_json::to_string_pretty(&v).expect("json");
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text + "\n") {
                        eprintln!("error: {p}: {e}");
                        return ExitCode::from(2);
                    }
                }
                None => {
                    // a closed pipe is not an error worth reporting
                    let _ = writeln!(std::io::stdout(), "{text}");
                }
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Contradiction(m)) => {
            eprintln!("contradiction: {m}");
            ExitCode::from(3)
        }
    }
}
