use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use zeta_xray::gram::{self, GramPoint};
use zeta_xray::special::oracle_by_name;
use zeta_xray::xray::{self, GridSpec, RenderStyle};
use zeta_xray::{zeta, ComplexPoint, Error, Rectangle};

const AFTER_HELP: &str = "\
Conventions:
  Gram points are indexed from -1: g_-1 ~ 9.667, g_0 ~ 17.846, g_1 ~ 23.171.
  Index ranges lo..hi include lo and exclude hi. Height ranges lo..hi are
  real t values and include both ends.
  Heights t, abscissae sigma and all coordinates are in the usual s = sigma + it
  units.

Exit status: 0 success, 2 domain or range error, 3 non-convergence or
precision loss. Diagnostics go to standard error.

Structured output (--format structured) writes one JSON record per line with
keys in this order:
  eval       s_re, s_im, value_re, value_im, error_bound, method, warning
  zeros      ordinal, t, bracket_lo, bracket_hi, refinement_width
  gram       index, t, z, quality
  audit      n_lo, n_hi, points, blocks, zeros, gram_violations, rosser_violations
             (--out then holds one record per Gram point: index, t, z, quality, block)
  s          t, n, s, s_walk, theta
  sigma0     digits, sigma0
  sheet-perm gram_index, gram_point, zero_ordinal, zero_re, zero_im, line_lo, line_hi, parallel
  xray       function, curves, thick, thin, zeros, poles, saddles, diagnostics
             (--out then holds one record per curve: kind, line_number,
             line_numbers, closed, points, start, end, singularities)";

#[derive(Parser)]
#[command(name = "zeta-xray", version, about = "Riemann zeta evaluation, Gram analytics and X-ray figures", after_help = AFTER_HELP)]
struct Cli {
    /// Cap on worker threads (default: one per core). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress progress messages on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    /// table-text (default), structured (JSON lines) or vector (SVG, xray only;
    /// the xray default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    TableText,
    Structured,
    Vector,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ζ(s) with an error bound.
    #[command(after_help = "Example: zeta-xray eval --s 0.5+14.134725i")]
    Eval {
        /// Complex argument such as 2, 2+0i, -3.5-1e-3i or 14i.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Target absolute accuracy.
        #[arg(long, default_value_t = zeta::DEFAULT_TARGET)]
        accuracy: f64,
    },
    /// Zeros 1/2 + iγ with γ in a height range, located by sign changes of Z(t).
    #[command(
        after_help = "Heights are real t values, both ends included. Ordinals count zeros by height, the first zero (t ~ 14.1347) being 1."
    )]
    Zeros {
        /// Height range lo..hi.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Gram points g_n with Z(g_n) and good/bad quality.
    #[command(
        after_help = "Indices start at -1 (g_-1 ~ 9.667); lo..hi includes lo and excludes hi. A Gram point is good when (-1)^n Z(g_n) > 0."
    )]
    Gram {
        /// Index range lo..hi.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Audit Gram's law and Rosser's rule over a range of Gram indices.
    #[command(
        after_help = "Indices start at -1 and the range lo..hi excludes hi, so 0..130 audits g_0 through g_129. \
The violation summary goes to standard output; the per-point report goes to --out. Progress is printed to standard error every 1000 Gram points unless --quiet."
    )]
    Audit {
        /// Index range lo..hi.
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
        /// Report file (default: gram_audit_<lo>_<hi>.txt, or .jsonl for structured output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// S(T) = N(T) - θ(T)/π - 1 from the argument of ζ along the horizontal at height T.
    #[command(after_help = "T must be at least 9. N(T) counts zeros with 0 < γ <= T.")]
    S {
        #[arg(long)]
        t: f64,
    },
    /// The constant σ₀ > 1 solving Σ_p arcsin(p^-σ) = π/2.
    Sigma0 {
        /// Significant digits, 1 to 14.
        #[arg(long, default_value_t = 12)]
        digits: u32,
    },
    /// Trace the curves Re f = 0 (thin) and Im f = 0 (thick) over a rectangle.
    #[command(
        after_help = "Functions: zeta, hermite7, bessel_j7, airy_ai, gamma, poly:c_n,...,c_0 (highest degree first). \
--rect is sigma_min,sigma_max,t_min,t_max. The grid defaults to 8 cells per unit with 5 levels of refinement. \
--out receives SVG (vector, the default), the curve inventory (structured) or a point dump (table-text)."
    )]
    Xray {
        #[arg(long)]
        function: String,
        /// sigma_min,sigma_max,t_min,t_max
        #[arg(long, allow_hyphen_values = true)]
        rect: String,
        #[arg(long)]
        out: PathBuf,
        /// Grid columns.
        #[arg(long)]
        nx: Option<usize>,
        /// Grid rows.
        #[arg(long)]
        ny: Option<usize>,
        /// Maximum refinement depth, 0 to 8.
        #[arg(long)]
        depth: Option<u32>,
        /// Also write the "sigma t kind" point dump here.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Also write the JSON-lines curve inventory here.
        #[arg(long)]
        inventory: Option<PathBuf>,
        /// Draw every vertex as a dot.
        #[arg(long)]
        point_cloud: bool,
        /// Label numbered lines.
        #[arg(long)]
        labels: bool,
        /// Circle the Gram points on the critical line (zeta only).
        #[arg(long)]
        gram_points: bool,
        /// Leave the critical strip unshaded.
        #[arg(long)]
        no_strip: bool,
    },
    /// Pair Gram points with zeros by following the thick line through each Gram point.
    #[command(after_help = "Indices start at -1; lo..hi excludes hi, so -1..19 gives the first 20 terms.")]
    SheetPerm {
        /// Index range lo..hi.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
}

type CliResult<T> = Result<T, Error>;

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn parse_range<T: std::str::FromStr>(text: &str) -> CliResult<(T, T)>
where
    T::Err: std::fmt::Display,
{
    let (a, b) = text.split_once("..").ok_or_else(|| domain(format!("expected lo..hi, got '{text}'")))?;
    let p = |v: &str| v.trim().parse::<T>().map_err(|e| domain(format!("bad range bound '{v}': {e}")));
    Ok((p(a)?, p(b)?))
}

fn parse_index_range(text: &str) -> CliResult<(i64, i64)> {
    let (lo, hi) = parse_range::<i64>(text)?;
    if hi <= lo {
        return Err(domain(format!("empty index range {text}")));
    }
    Ok((lo, hi))
}

/// Parses `a`, `bi`, `a+bi` and `a-bi`, with exponents allowed in either part.
fn parse_complex(text: &str) -> CliResult<ComplexPoint> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || domain(format!("cannot parse complex number '{text}'"));
    let num = |v: &str| -> CliResult<f64> {
        match v {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => v.parse::<f64>().map_err(|_| bad()),
        }
    };
    let (re, im) = match t.strip_suffix(['i', 'j']) {
        None => (t.parse::<f64>().map_err(|_| bad())?, 0.0),
        Some(body) => {
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
            match split {
                Some(k) => (body[..k].parse::<f64>().map_err(|_| bad())?, num(&body[k..])?),
                None => (0.0, num(body)?),
            }
        }
    };
    ComplexPoint::new(re, im)
}

fn parse_rect(text: &str) -> CliResult<Rectangle> {
    let v = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| domain(format!("bad rectangle '{text}': {e}")))?;
    if v.len() != 4 {
        return Err(domain(format!("rectangle needs sigma_min,sigma_max,t_min,t_max, got '{text}'")));
    }
    Rectangle::new(v[0], v[1], v[2], v[3])
}

fn fmt_complex(re: f64, im: f64) -> String {
    if im.is_sign_negative() {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| domain(format!("cannot write {}: {e}", path.display())))
}

fn jsonl<T: Serialize>(records: &[T]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

struct Ctx {
    quiet: bool,
    format: Format,
}

impl Ctx {
    fn structured(&self) -> bool {
        self.format == Format::Structured
    }

    fn text_only(&self, what: &str) -> CliResult<()> {
        if self.format == Format::Vector {
            return Err(domain(format!("{what} has no vector output")));
        }
        Ok(())
    }

    fn progress(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

#[derive(Serialize)]
struct EvalRecord {
    s_re: f64,
    s_im: f64,
    value_re: f64,
    value_im: f64,
    error_bound: f64,
    method: String,
    warning: Option<zeta::EvalWarning>,
}

fn cmd_eval(ctx: &Ctx, s: &str, accuracy: f64) -> CliResult<String> {
    ctx.text_only("eval")?;
    let s = parse_complex(s)?;
    let r = zeta::zeta(s, accuracy)?;
    if ctx.structured() {
        return Ok(jsonl(&[EvalRecord {
            s_re: s.re,
            s_im: s.im,
            value_re: r.value.re,
            value_im: r.value.im,
            error_bound: r.error_bound,
            method: r.method.to_string(),
            warning: r.warning,
        }]));
    }
    let mut out = format!(
        "zeta({}) = {}\nerror bound: {:.3e}\nmethod: {}\n",
        fmt_complex(s.re, s.im),
        fmt_complex(r.value.re, r.value.im),
        r.error_bound,
        r.method
    );
    if let Some(w) = r.warning {
        out.push_str(&format!("warning: {w:?}\n"));
    }
    Ok(out)
}

#[derive(Serialize)]
struct ZeroRow {
    ordinal: i64,
    t: f64,
    bracket_lo: f64,
    bracket_hi: f64,
    refinement_width: f64,
}

fn cmd_zeros(ctx: &Ctx, range: &str) -> CliResult<String> {
    ctx.text_only("zeros")?;
    let (lo, hi) = parse_range::<f64>(range)?;
    let search = gram::find_zeros(lo, hi)?;
    if let Some(w) = &search.warning {
        eprintln!("warning: {w}");
    }
    let rows: Vec<ZeroRow> = search
        .zeros
        .iter()
        .map(|z| ZeroRow {
            ordinal: z.ordinal,
            t: z.t,
            bracket_lo: z.bracket.0,
            bracket_hi: z.bracket.1,
            refinement_width: z.refinement_width,
        })
        .collect();
    if ctx.structured() {
        return Ok(jsonl(&rows));
    }
    let mut out = String::from("# ordinal t bracket_lo bracket_hi\n");
    for r in &rows {
        out.push_str(&format!("{} {:.10} {:.10} {:.10}\n", r.ordinal, r.t, r.bracket_lo, r.bracket_hi));
    }
    Ok(out)
}

#[derive(Serialize)]
struct GramRow {
    index: i64,
    t: f64,
    z: f64,
    quality: String,
}

fn gram_row(p: &GramPoint) -> GramRow {
    GramRow { index: p.index, t: p.t, z: p.z_value, quality: p.quality.to_string() }
}

fn cmd_gram(ctx: &Ctx, range: &str) -> CliResult<String> {
    ctx.text_only("gram")?;
    let (lo, hi) = parse_index_range(range)?;
    let points = gram::gram_points(lo, hi - 1)?;
    if ctx.structured() {
        return Ok(jsonl(&points.iter().map(gram_row).collect::<Vec<_>>()));
    }
    let mut out = String::from("# index t Z quality\n");
    for p in &points {
        out.push_str(&format!("{} {:.10} {:.10e} {}\n", p.index, p.t, p.z_value, p.quality));
    }
    Ok(out)
}

const PROGRESS_CHUNK: i64 = 1000;

#[derive(Serialize)]
struct AuditSummary {
    n_lo: i64,
    n_hi: i64,
    points: usize,
    blocks: usize,
    zeros: usize,
    gram_violations: Vec<(i64, i64)>,
    rosser_violations: Vec<(i64, i64)>,
}

#[derive(Serialize)]
struct AuditRow {
    index: i64,
    t: f64,
    z: f64,
    quality: String,
    block: Option<usize>,
}

fn cmd_audit(ctx: &Ctx, range: &str, out: Option<PathBuf>) -> CliResult<String> {
    ctx.text_only("audit")?;
    let (lo, hi) = parse_index_range(range)?;
    let last = hi - 1;
    let total = hi - lo;
    let mut points = Vec::with_capacity(total as usize);
    let mut start = lo;
    while start <= last {
        let end = (start + PROGRESS_CHUNK - 1).min(last);
        points.extend(gram::gram_points(start, end)?);
        if total > PROGRESS_CHUNK {
            ctx.progress(&format!("audit: {} of {} Gram points", points.len(), total));
        }
        start = end + 1;
    }
    let report = gram::audit_gram_points(points)?;
    let path = out.unwrap_or_else(|| {
        let ext = if ctx.structured() { "jsonl" } else { "txt" };
        PathBuf::from(format!("gram_audit_{lo}_{hi}.{ext}"))
    });
    let c = &report.classification;
    if ctx.structured() {
        let rows: Vec<AuditRow> = c
            .points
            .iter()
            .map(|p| AuditRow {
                index: p.index,
                t: p.t,
                z: p.z_value,
                quality: p.quality.to_string(),
                block: c.blocks.iter().position(|b| b.start_index < p.index && p.index < b.end_index),
            })
            .collect();
        write_file(&path, &jsonl(&rows))?;
        let summary = AuditSummary {
            n_lo: report.n_lo,
            n_hi: report.n_hi,
            points: c.points.len(),
            blocks: c.blocks.len(),
            zeros: c.zeros.zeros.len(),
            gram_violations: report.gram_violations.iter().map(|v| (v.interval.index, v.interval.zero_count)).collect(),
            rosser_violations: report.rosser_violations.iter().map(|b| (b.start_index, b.end_index)).collect(),
        };
        return Ok(jsonl(&[summary]));
    }
    write_file(&path, &report.table())?;
    Ok(report.summary())
}

#[derive(Serialize)]
struct SRow {
    t: f64,
    n: i64,
    s: f64,
    s_walk: f64,
    theta: f64,
}

fn cmd_s(ctx: &Ctx, t: f64) -> CliResult<String> {
    ctx.text_only("s")?;
    let r = gram::s_of_t(t)?;
    if ctx.structured() {
        return Ok(jsonl(&[SRow { t: r.t, n: r.n_of_t, s: r.s_value, s_walk: r.s_walk, theta: r.theta }]));
    }
    Ok(format!(
        "T = {}\nN(T) = {}\nS(T) = {:.9}\nargument walk / pi = {:.9}\ntheta(T) = {:.9}\n",
        r.t, r.n_of_t, r.s_value, r.s_walk, r.theta
    ))
}

fn cmd_sigma0(ctx: &Ctx, digits: u32) -> CliResult<String> {
    ctx.text_only("sigma0")?;
    let v = gram::van_de_lune_sigma0(digits)?;
    if ctx.structured() {
        return Ok(format!("{}\n", serde_json::json!({ "digits": digits, "sigma0": v })));
    }
    Ok(format!("sigma0 = {v:.prec$}\n", prec = digits.saturating_sub(1) as usize))
}

#[derive(Serialize)]
struct XraySummary {
    function: String,
    curves: usize,
    thick: usize,
    thin: usize,
    zeros: usize,
    poles: usize,
    saddles: usize,
    diagnostics: Vec<String>,
}

struct XrayArgs {
    function: String,
    rect: String,
    out: PathBuf,
    nx: Option<usize>,
    ny: Option<usize>,
    depth: Option<u32>,
    points: Option<PathBuf>,
    inventory: Option<PathBuf>,
    point_cloud: bool,
    labels: bool,
    gram_points: bool,
    no_strip: bool,
}

fn gram_heights(rect: &Rectangle) -> CliResult<Vec<f64>> {
    let mut heights = Vec::new();
    let mut n = -1;
    loop {
        let t = gram::gram_abscissa(n)?;
        if t > rect.t_max {
            break;
        }
        if t >= rect.t_min {
            heights.push(t);
        }
        n += 1;
    }
    Ok(heights)
}

fn cmd_xray(ctx: &Ctx, a: XrayArgs) -> CliResult<String> {
    let oracle = oracle_by_name(&a.function)?;
    let rect = parse_rect(&a.rect)?;
    let default = GridSpec::default_for(&rect);
    let grid = GridSpec::new(
        a.nx.unwrap_or(default.nx),
        a.ny.unwrap_or(default.ny),
        a.depth.unwrap_or(default.max_refinement_depth),
    )?;
    ctx.progress(&format!(
        "xray: {} on {}x{} cells, depth {}",
        a.function, grid.nx, grid.ny, grid.max_refinement_depth
    ));
    let x = xray::xray(oracle, rect, grid)?;
    for d in &x.diagnostics {
        eprintln!("note: {d}");
    }
    let style = RenderStyle {
        shade_strip: !a.no_strip,
        labels: a.labels,
        point_cloud: a.point_cloud,
        gram_points: if a.gram_points && a.function == "zeta" { gram_heights(&rect)? } else { Vec::new() },
        ..RenderStyle::default()
    };
    let main = match ctx.format {
        Format::Vector => xray::render_svg(&x.curves, &x.singularities, &rect, &style),
        Format::Structured => xray::inventory_jsonl(&x.curves),
        Format::TableText => xray::point_dump(&x.curves),
    };
    write_file(&a.out, &main)?;
    if let Some(p) = &a.points {
        write_file(p, &xray::point_dump(&x.curves))?;
    }
    if let Some(p) = &a.inventory {
        write_file(p, &xray::inventory_jsonl(&x.curves))?;
    }
    let thick = x.curves.iter().filter(|c| c.kind == xray::CurveKind::Thick).count();
    let summary = XraySummary {
        function: x.function.clone(),
        curves: x.curves.len(),
        thick,
        thin: x.curves.len() - thick,
        zeros: x.zeros().count(),
        poles: x.poles().count(),
        saddles: x.saddles().count(),
        diagnostics: x.diagnostics.clone(),
    };
    if ctx.structured() {
        return Ok(jsonl(&[summary]));
    }
    let mut out = format!(
        "{}: {} curves ({} thick, {} thin), {} zeros, {} poles, {} saddles\n",
        summary.function, summary.curves, summary.thick, summary.thin, summary.zeros, summary.poles, summary.saddles
    );
    for s in &x.singularities {
        out.push_str(&format!(
            "{:?} at {:.10}{:+.10}i multiplicity {} branches {}/{}\n",
            s.kind, s.point.re, s.point.im, s.multiplicity, s.thick_branches, s.thin_branches
        ));
    }
    out.push_str(&format!("wrote {}\n", a.out.display()));
    Ok(out)
}

#[derive(Serialize)]
struct SheetRow {
    gram_index: i64,
    gram_point: f64,
    zero_ordinal: Option<i64>,
    zero_re: Option<f64>,
    zero_im: Option<f64>,
    line_lo: Option<i64>,
    line_hi: Option<i64>,
    parallel: bool,
}

fn cmd_sheet_perm(ctx: &Ctx, range: &str) -> CliResult<String> {
    ctx.text_only("sheet-perm")?;
    let (lo, hi) = parse_index_range(range)?;
    let oracle = oracle_by_name("zeta")?;
    let sheets = xray::sheet_permutation(lo, hi, oracle.as_ref())?;
    let rows: Vec<SheetRow> = sheets
        .iter()
        .map(|s| SheetRow {
            gram_index: s.gram_index,
            gram_point: s.gram_point,
            zero_ordinal: s.zero_ordinal,
            zero_re: s.zero.map(|z| z.re),
            zero_im: s.zero.map(|z| z.im),
            line_lo: s.line_numbers.map(|l| l.0),
            line_hi: s.line_numbers.map(|l| l.1),
            parallel: s.parallel,
        })
        .collect();
    for s in &sheets {
        if let Some(n) = &s.note {
            eprintln!("note: g_{}: {n}", s.gram_index);
        }
    }
    if ctx.structured() {
        return Ok(jsonl(&rows));
    }
    let opt = |v: Option<i64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut out = String::from("# gram_index gram_point zero_ordinal zero_t lines parallel\n");
    for r in &rows {
        out.push_str(&format!(
            "{} {:.6} {} {} {}..{} {}\n",
            r.gram_index,
            r.gram_point,
            opt(r.zero_ordinal),
            r.zero_im.map_or_else(|| "-".to_string(), |t| format!("{t:.6}")),
            opt(r.line_lo),
            opt(r.line_hi),
            r.parallel
        ));
    }
    let perm: Vec<String> = rows.iter().map(|r| opt(r.zero_ordinal)).collect();
    out.push_str(&format!("permutation: {}\n", perm.join(",")));
    Ok(out)
}

fn run(cli: Cli) -> CliResult<String> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| domain(format!("cannot configure {n} threads: {e}")))?;
    }
    let is_xray = matches!(cli.command, Command::Xray { .. });
    let format = cli.format.unwrap_or(if is_xray { Format::Vector } else { Format::TableText });
    let ctx = Ctx { quiet: cli.quiet, format };
    match cli.command {
        Command::Eval { s, accuracy } => cmd_eval(&ctx, &s, accuracy),
        Command::Zeros { t } => cmd_zeros(&ctx, &t),
        Command::Gram { n } => cmd_gram(&ctx, &n),
        Command::Audit { gram, out } => cmd_audit(&ctx, &gram, out),
        Command::S { t } => cmd_s(&ctx, t),
        Command::Sigma0 { digits } => cmd_sigma0(&ctx, digits),
        Command::Xray {
            function,
            rect,
            out,
            nx,
            ny,
            depth,
            points,
            inventory,
            point_cloud,
            labels,
            gram_points,
            no_strip,
        } => cmd_xray(
            &ctx,
            XrayArgs {
                function,
                rect,
                out,
                nx,
                ny,
                depth,
                points,
                inventory,
                point_cloud,
                labels,
                gram_points,
                no_strip,
            },
        ),
        Command::SheetPerm { n } => cmd_sheet_perm(&ctx, &n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |t: &str| {
            let p = parse_complex(t).unwrap();
            (p.re, p.im)
        };
        assert_eq!(c("2+0i"), (2.0, 0.0));
        assert_eq!(c("2"), (2.0, 0.0));
        assert_eq!(c("-3.5-1e-3i"), (-3.5, -1e-3));
        assert_eq!(c("1e-2+2E+1i"), (1e-2, 20.0));
        assert_eq!(c("14i"), (0.0, 14.0));
        assert_eq!(c("-i"), (0.0, -1.0));
        assert_eq!(c("0.5 + 14.1347i"), (0.5, 14.1347));
        assert!(parse_complex("2+").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_index_range("-1..127").unwrap(), (-1, 127));
        assert!(parse_index_range("5..5").is_err());
        assert_eq!(parse_range::<f64>("10.5..20").unwrap(), (10.5, 20.0));
        assert!(parse_range::<f64>("10").is_err());
        let r = parse_rect("-30,10,-10,40").unwrap();
        assert_eq!((r.sigma_min, r.t_max), (-30.0, 40.0));
        assert!(parse_rect("1,2,3").is_err());
    }
}
