//! Command-line front end: map algebra on map files, element builders,
//! wreath normal forms, slope-coded arithmetic, commutator decomposition,
//! the logic toolkit, plot emission, and the deterministic selftest.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use plgroups::commutators::{self, CommutatorPair};
use plgroups::constructions::{make_bump, Generators};
use plgroups::folog;
use plgroups::interp;
use plgroups::numbers::parse_rational;
use plgroups::wreath::{self, WreathElement};
use plgroups::{campaign, GroupContext, PLMap, Rational};

#[derive(Parser)]
#[command(
    name = "plgroups",
    version,
    about = "exact piecewise-affine group computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CtxArgs {
    /// Slope base n of the cyclic slope group
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Interval length r (a rational in Z[1/n])
    #[arg(long, default_value = "1")]
    r: String,
}

impl CtxArgs {
    fn build(&self) -> Result<GroupContext, plgroups::Error> {
        GroupContext::new(self.n, parse_rational(&self.r)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compose, invert, evaluate, and inspect maps in map files
    Map {
        #[command(subcommand)]
        op: MapOp,
    },
    /// Build a bump with prescribed support and boundary slopes
    Bump {
        #[command(flatten)]
        ctx: CtxArgs,
        /// Left end of the support
        #[arg(long)]
        alpha: String,
        /// Right end of the support
        #[arg(long)]
        beta: String,
        /// Slope right of alpha (a power of n above 1)
        #[arg(long)]
        p: String,
        /// Slope left of beta (a power of n below 1)
        #[arg(long)]
        q: String,
        /// Output file (stdout when absent)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the generator pair and its roots, emitting map files
    Generators {
        #[command(flatten)]
        ctx: CtxArgs,
        /// Ladder base point in ]0; r[
        #[arg(long)]
        alpha0: String,
        /// Root exponent with a = c^s
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Root exponent with b = d^t
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Directory for a.map, b.map, c.map, d.map
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Wreath-product normal forms and membership decomposition
    Wreath {
        #[command(subcommand)]
        op: WreathOp,
    },
    /// Arithmetic coded in boundary slopes
    Arith {
        #[command(subcommand)]
        op: ArithOp,
    },
    /// Rewrite a product of commutators as exactly two commutators
    Commutators {
        #[command(subcommand)]
        op: CommutatorsOp,
    },
    /// First-order formulas, finite structures, and reductions
    Logic {
        #[command(subcommand)]
        op: LogicOp,
    },
    /// Emit a CSV or SVG plot of a map's graph
    Plot {
        /// Map file
        file: PathBuf,
        /// CSV output path
        #[arg(long)]
        csv: Option<PathBuf>,
        /// SVG output path
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the deterministic property campaign
    Selftest {
        /// Campaign seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial count scale
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum MapOp {
    /// Compose maps left to right
    Compose {
        files: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Invert a map
    Inverse {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a map at a point
    Eval { file: PathBuf, point: String },
    /// Print the support as a union of open intervals
    Support { file: PathBuf },
    /// Print one-sided slopes at a point
    Slopes { file: PathBuf, point: String },
}

#[derive(Subcommand)]
enum WreathOp {
    /// Evaluate a word over a, b and print the normal form
    Eval { word: String },
    /// Decompose a map over the generators built from --alpha0, --s, --t
    Decompose {
        file: PathBuf,
        #[arg(long, default_value = "1/2")]
        alpha0: String,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Use the standard-pair instance over n = 2, r = 1 instead
        #[arg(long)]
        thompson: bool,
    },
}

#[derive(Subcommand)]
enum ArithOp {
    /// Encode a positive integer as a map in the coding set
    Encode {
        k: i64,
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decode a map in the coding set
    Decode { file: PathBuf },
    /// Check decode(x) + decode(y) = decode(z) at the group level
    Add { x: PathBuf, y: PathBuf, z: PathBuf },
    /// Check decode(x) | decode(y); optionally emit a verified witness
    Divides {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        witness: bool,
    },
}

#[derive(Subcommand)]
enum CommutatorsOp {
    /// Read 2k map-file paths (one per line) and decompose the product
    Decompose {
        /// File listing the commutator entries pairwise
        pairs_file: PathBuf,
        /// Directory for the output pairs and the equality certificate
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum LogicOp {
    /// Evaluate a formula file against a structure file
    Eval {
        structure: PathBuf,
        formula: PathBuf,
        /// Assignments var=value for free variables
        #[arg(long = "assign", value_name = "VAR=VALUE")]
        assign: Vec<String>,
    },
    /// Reduce a relational sentence through an interpretation package
    Reduce { package: PathBuf, formula: PathBuf },
    /// Run the reduction-soundness campaign
    CheckInterp {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn load_map(path: &PathBuf) -> Result<PLMap, plgroups::Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| plgroups::Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    text.parse()
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<(), plgroups::Error> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| plgroups::Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, plgroups::Error> {
    match cli.command {
        Command::Map { op } => run_map(op)?,
        Command::Bump {
            ctx,
            alpha,
            beta,
            p,
            q,
            out,
        } => {
            let ctx = ctx.build()?;
            let alpha = parse_rational(&alpha)?;
            let beta = parse_rational(&beta)?;
            let p_exp = slope_exp(&ctx, &p)?;
            let q_exp = slope_exp(&ctx, &q)?;
            let bump = make_bump(&ctx, &alpha, &beta, p_exp, q_exp)?;
            emit(bump.to_string(), &out)?;
        }
        Command::Generators {
            ctx,
            alpha0,
            s,
            t,
            out_dir,
        } => {
            let ctx = ctx.build()?;
            let alpha0 = parse_rational(&alpha0)?;
            ensure_dir(&out_dir)?;
            let gens = Generators::build(&ctx, &alpha0, s, t)?;
            for (name, map) in [
                ("a", &gens.a),
                ("b", &gens.b),
                ("c", &gens.c),
                ("d", &gens.d),
            ] {
                let path = out_dir.join(format!("{name}.map"));
                emit(map.to_string(), &Some(path))?;
            }
            println!("wrote a.map b.map c.map d.map to {}", out_dir.display());
        }
        Command::Wreath { op } => run_wreath(op)?,
        Command::Arith { op } => return run_arith(op),
        Command::Commutators { op } => run_commutators(op)?,
        Command::Logic { op } => return run_logic(op),
        Command::Plot { file, csv, svg } => {
            let map = load_map(&file)?;
            if csv.is_none() && svg.is_none() {
                return Err(plgroups::Error::Domain("choose --csv and/or --svg".into()));
            }
            if let Some(path) = csv {
                emit(plot_csv(&map), &Some(path))?;
            }
            if let Some(path) = svg {
                emit(plot_svg(&map), &Some(path))?;
            }
        }
        Command::Selftest { seed, trials } => {
            let checks = campaign::run_campaign(seed, trials);
            let mut failed = 0;
            for check in &checks {
                let verdict = if check.pass { "PASS" } else { "FAIL" };
                println!("CHECK {} {verdict} {}", check.name, check.detail);
                if !check.pass {
                    failed += 1;
                }
            }
            println!(
                "{} checks, {} failed (seed {seed}, trials {trials})",
                checks.len(),
                failed
            );
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn slope_exp(ctx: &GroupContext, text: &str) -> Result<i64, plgroups::Error> {
    let v = parse_rational(text)?;
    ctx.log_slope(&v)
        .ok_or_else(|| plgroups::Error::Domain(format!("{v} is not a power of {}", ctx.n())))
}

fn run_map(op: MapOp) -> Result<(), plgroups::Error> {
    match op {
        MapOp::Compose { files, out } => {
            if files.is_empty() {
                return Err(plgroups::Error::Domain("nothing to compose".into()));
            }
            let maps: Vec<PLMap> = files.iter().map(load_map).collect::<Result<_, _>>()?;
            for m in &maps[1..] {
                if m.ctx() != maps[0].ctx() {
                    return Err(plgroups::Error::Domain(
                        "maps live over different contexts".into(),
                    ));
                }
            }
            let mut acc = maps[0].clone();
            for m in &maps[1..] {
                acc = acc.compose(m);
            }
            emit(acc.to_string(), &out)?;
        }
        MapOp::Inverse { file, out } => {
            emit(load_map(&file)?.inverse().to_string(), &out)?;
        }
        MapOp::Eval { file, point } => {
            let map = load_map(&file)?;
            let point = parse_rational(&point)?;
            in_closed_interval(&map, &point)?;
            println!("{}", map.evaluate(&point));
        }
        MapOp::Support { file } => {
            println!("{}", load_map(&file)?.support());
        }
        MapOp::Slopes { file, point } => {
            let map = load_map(&file)?;
            let point = parse_rational(&point)?;
            in_closed_interval(&map, &point)?;
            if &point < map.ctx().r() {
                println!("right: {}", map.slope_right(&point));
            }
            if point > Rational::from_integer(0.into()) {
                println!("left: {}", map.slope_left(&point));
            }
        }
    }
    Ok(())
}

fn in_closed_interval(map: &PLMap, point: &Rational) -> Result<(), plgroups::Error> {
    if point < &Rational::from_integer(0.into()) || point > map.ctx().r() {
        return Err(plgroups::Error::Domain(format!(
            "point {point} outside [0; {}]",
            map.ctx().r()
        )));
    }
    Ok(())
}

fn run_wreath(op: WreathOp) -> Result<(), plgroups::Error> {
    match op {
        WreathOp::Eval { word } => {
            println!("{}", WreathElement::from_word(&word)?);
        }
        WreathOp::Decompose {
            file,
            alpha0,
            s,
            t,
            thompson,
        } => {
            let map = load_map(&file)?;
            let gens = if thompson {
                Generators::thompson()
            } else {
                Generators::build(map.ctx(), &parse_rational(&alpha0)?, s, t)?
            };
            if gens.ctx() != map.ctx() {
                return Err(plgroups::Error::Domain(
                    "map context does not match generators".into(),
                ));
            }
            match wreath::wreath_decompose(&map, &gens) {
                Some(u) => println!("{u}"),
                None => println!("not-a-member"),
            }
        }
    }
    Ok(())
}

fn run_arith(op: ArithOp) -> Result<ExitCode, plgroups::Error> {
    match op {
        ArithOp::Encode { k, ctx, out } => {
            let ctx = ctx.build()?;
            emit(interp::encode_nat(&ctx, k)?.to_string(), &out)?;
        }
        ArithOp::Decode { file } => {
            println!("{}", interp::decode(&load_map(&file)?)?);
        }
        ArithOp::Add { x, y, z } => {
            let (x, y, z) = (load_map(&x)?, load_map(&y)?, load_map(&z)?);
            same_ctx(&[&x, &y, &z])?;
            println!("{}", interp::add_bridge(&x, &y, &z)?);
        }
        ArithOp::Divides { x, y, witness } => {
            let (x, y) = (load_map(&x)?, load_map(&y)?);
            same_ctx(&[&x, &y])?;
            if witness {
                match interp::divides_witness(&x, &y)? {
                    Some(w) => {
                        println!("true");
                        println!("witness w:");
                        print!("{}", w.w);
                    }
                    None => println!("false"),
                }
            } else {
                println!("{}", interp::divides_bridge(&x, &y)?);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn ensure_dir(dir: &PathBuf) -> Result<(), plgroups::Error> {
    fs::create_dir_all(dir)
        .map_err(|e| plgroups::Error::Domain(format!("cannot create {}: {e}", dir.display())))
}

fn same_ctx(maps: &[&PLMap]) -> Result<(), plgroups::Error> {
    for m in &maps[1..] {
        if m.ctx() != maps[0].ctx() {
            return Err(plgroups::Error::Domain(
                "maps live over different contexts".into(),
            ));
        }
    }
    Ok(())
}

fn run_commutators(op: CommutatorsOp) -> Result<(), plgroups::Error> {
    match op {
        CommutatorsOp::Decompose {
            pairs_file,
            out_dir,
        } => {
            let listing = fs::read_to_string(&pairs_file).map_err(|e| {
                plgroups::Error::Domain(format!("cannot read {}: {e}", pairs_file.display()))
            })?;
            let paths: Vec<PathBuf> = listing
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(PathBuf::from)
                .collect();
            if paths.is_empty() || !paths.len().is_multiple_of(2) {
                return Err(plgroups::Error::Domain(format!(
                    "need a positive even number of map files, got {}",
                    paths.len()
                )));
            }
            ensure_dir(&out_dir)?;
            let maps: Vec<PLMap> = paths.iter().map(load_map).collect::<Result<_, _>>()?;
            let refs: Vec<&PLMap> = maps.iter().collect();
            same_ctx(&refs)?;
            let pairs: Vec<CommutatorPair> = maps
                .chunks(2)
                .map(|pair| CommutatorPair::new(pair[0].clone(), pair[1].clone()))
                .collect();
            let original = commutators::product(&pairs);
            let (p, q) = commutators::decompose_to_two(&pairs)?;
            for (name, map) in [("x1", &p.x), ("x2", &p.y), ("x3", &q.x), ("x4", &q.y)] {
                emit(map.to_string(), &Some(out_dir.join(format!("{name}.map"))))?;
            }
            // the straight product doubles as a machine-checkable certificate
            emit(original.to_string(), &Some(out_dir.join("product.map")))?;
            let recombined = p.value().compose(&q.value());
            assert_eq!(recombined, original);
            println!(
                "wrote x1.map x2.map x3.map x4.map and product.map to {}",
                out_dir.display()
            );
            println!("[x1,x2][x3,x4] = product: verified exactly");
        }
    }
    Ok(())
}

fn run_logic(op: LogicOp) -> Result<ExitCode, plgroups::Error> {
    match op {
        LogicOp::Eval {
            structure,
            formula,
            assign,
        } => {
            let m: folog::FiniteStructure = fs::read_to_string(&structure)
                .map_err(|e| {
                    plgroups::Error::Domain(format!("cannot read {}: {e}", structure.display()))
                })?
                .parse()?;
            let f = folog::parse(&fs::read_to_string(&formula).map_err(|e| {
                plgroups::Error::Domain(format!("cannot read {}: {e}", formula.display()))
            })?)?;
            let mut asg = folog::Assignment::new();
            for item in assign {
                let (var, value) = item.split_once('=').ok_or_else(|| {
                    plgroups::Error::Domain(format!("bad assignment {item:?}, want VAR=VALUE"))
                })?;
                let value: usize = value.trim().parse().map_err(|_| {
                    plgroups::Error::Domain(format!("bad element {value:?} in {item:?}"))
                })?;
                asg.insert(var.trim().to_owned(), value);
            }
            println!("{}", m.evaluate(&f, &asg)?);
        }
        LogicOp::Reduce { package, formula } => {
            let text = fs::read_to_string(&package).map_err(|e| {
                plgroups::Error::Domain(format!("cannot read {}: {e}", package.display()))
            })?;
            let data = parse_package(&text)?;
            let f = folog::parse(&fs::read_to_string(&formula).map_err(|e| {
                plgroups::Error::Domain(format!("cannot read {}: {e}", formula.display()))
            })?)?;
            println!("{}", data.reduce(&f)?);
        }
        LogicOp::CheckInterp { seed, trials } => {
            let checks = campaign::run_logic_campaign(seed, trials);
            let mut failed = 0;
            for check in &checks {
                let verdict = if check.pass { "PASS" } else { "FAIL" };
                println!("CHECK {} {verdict} {}", check.name, check.detail);
                if !check.pass {
                    failed += 1;
                }
            }
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Interpretation package file: line-oriented, `dim <n>`, optional
/// `param <name> <value>` lines, `target rel <name>/<arity>` lines, then
/// `phi <vars> : <formula>`, `psi <vars> | <vars> : <formula>`, and one
/// `xi <symbol> <vars> | <vars> | ... : <formula>` per target symbol.
fn parse_package(text: &str) -> Result<folog::InterpretationData, plgroups::Error> {
    let mut dim = None;
    let mut params = Vec::new();
    let mut param_values = Vec::new();
    let mut target = folog::Signature::new();
    let mut phi = None;
    let mut psi = None;
    let mut xi = BTreeMap::new();
    let bad = |lineno: usize, msg: String| plgroups::Error::Parse { pos: lineno, msg };
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
        match head {
            "dim" => {
                dim = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| bad(lineno, format!("bad dimension {rest:?}")))?,
                );
            }
            "param" => {
                let (name, value) = rest
                    .split_once(' ')
                    .ok_or_else(|| bad(lineno, "param needs a name and a value".into()))?;
                params.push(name.trim().to_owned());
                param_values.push(
                    value
                        .trim()
                        .parse()
                        .map_err(|_| bad(lineno, format!("bad param value {value:?}")))?,
                );
            }
            "target" => {
                let entry = rest
                    .trim()
                    .strip_prefix("rel ")
                    .ok_or_else(|| bad(lineno, "only relational targets are supported".into()))?;
                let (name, arity) = entry
                    .split_once('/')
                    .ok_or_else(|| bad(lineno, format!("bad target {entry:?}")))?;
                let arity = arity
                    .trim()
                    .parse()
                    .map_err(|_| bad(lineno, format!("bad arity {arity:?}")))?;
                target = target.with_rel(name.trim(), arity);
            }
            "phi" => {
                let (vars, body) = rest
                    .split_once(':')
                    .ok_or_else(|| bad(lineno, "phi needs `vars : formula`".into()))?;
                phi = Some((split_vars(vars), folog::parse(body)?));
            }
            "psi" => {
                let (vars, body) = rest
                    .split_once(':')
                    .ok_or_else(|| bad(lineno, "psi needs `vars | vars : formula`".into()))?;
                let blocks: Vec<Vec<String>> = vars.split('|').map(split_vars).collect();
                if blocks.len() != 2 {
                    return Err(bad(lineno, "psi needs exactly two variable blocks".into()));
                }
                psi = Some(((blocks[0].clone(), blocks[1].clone()), folog::parse(body)?));
            }
            "xi" => {
                let (head, body) = rest
                    .split_once(':')
                    .ok_or_else(|| bad(lineno, "xi needs `symbol vars | ... : formula`".into()))?;
                let (sym, vars) = head
                    .trim()
                    .split_once(' ')
                    .ok_or_else(|| bad(lineno, "xi needs a symbol name".into()))?;
                let blocks: Vec<Vec<String>> = vars.split('|').map(split_vars).collect();
                xi.insert(sym.to_owned(), (blocks, folog::parse(body)?));
            }
            other => return Err(bad(lineno, format!("unknown directive {other:?}"))),
        }
    }
    let dim = dim.ok_or_else(|| bad(0, "missing dim".into()))?;
    let (phi_vars, phi) = phi.ok_or_else(|| bad(0, "missing phi".into()))?;
    let (psi_vars, psi) = psi.ok_or_else(|| bad(0, "missing psi".into()))?;
    let data = folog::InterpretationData {
        dim,
        target_sig: target,
        params,
        param_values,
        phi_vars,
        phi,
        psi_vars,
        psi,
        xi,
    };
    data.validate()?;
    Ok(data)
}

fn split_vars(text: &str) -> Vec<String> {
    text.split([',', ' '])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}

fn plot_csv(map: &PLMap) -> String {
    let mut out = String::from("x,y\n");
    for (x, y) in map.breakpoints() {
        out.push_str(&format!("{x},{y}\n"));
    }
    out
}

/// One polyline for the graph plus axis ticks at the breakpoints.
fn plot_svg(map: &PLMap) -> String {
    let size = 480.0;
    let margin = 40.0;
    let r = plgroups::numbers::approx_f64(map.ctx().r());
    let scale = (size - 2.0 * margin) / r;
    let px = |v: f64| margin + v * scale;
    let py = |v: f64| size - margin - v * scale;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n"
    );
    svg.push_str(&format!(
        "  <rect x=\"{m}\" y=\"{m}\" width=\"{w}\" height=\"{w}\" fill=\"none\" stroke=\"#999\"/>\n",
        m = margin,
        w = size - 2.0 * margin
    ));
    let points: Vec<String> = map
        .breakpoints()
        .iter()
        .map(|(x, y)| {
            format!(
                "{:.3},{:.3}",
                px(plgroups::numbers::approx_f64(x)),
                py(plgroups::numbers::approx_f64(y))
            )
        })
        .collect();
    svg.push_str(&format!(
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"1.5\"/>\n",
        points.join(" ")
    ));
    for (x, y) in map.breakpoints() {
        let (fx, fy) = (
            plgroups::numbers::approx_f64(x),
            plgroups::numbers::approx_f64(y),
        );
        svg.push_str(&format!(
            "  <line x1=\"{0:.3}\" y1=\"{1}\" x2=\"{0:.3}\" y2=\"{2}\" stroke=\"#333\"/>\n",
            px(fx),
            size - margin,
            size - margin + 6.0
        ));
        svg.push_str(&format!(
            "  <line x1=\"{1}\" y1=\"{0:.3}\" x2=\"{2}\" y2=\"{0:.3}\" stroke=\"#333\"/>\n",
            py(fy),
            margin - 6.0,
            margin
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.3}\" y=\"{}\" font-size=\"9\" text-anchor=\"middle\">{}</text>\n",
            px(fx),
            size - margin + 18.0,
            x
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
