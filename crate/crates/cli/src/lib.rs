//! Front end for the `witt` binary.
//!
//! [`run`] parses one invocation and returns its exit code and output
//! instead of printing, so the binary, the batch mode and the tests share a
//! single code path. Exit codes: 0 success, 1 domain error or failed check,
//! 2 usage error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use witt_core::arith::{fmt_rational, is_prime, parse_rational, Rational};
use witt_core::conics::{
    conic_isomorphic, find_rational_point, holzer_bound, parametrize, splits, verify_certificate,
    witness_set, witt_distinguish, Evidence,
};
use witt_core::hyperfield::{
    find_isomorphisms, quotient, verify_axioms, AxiomReport, FiniteHyperfield, SubgroupSelection,
    DEFAULT_ISOMORPHISM_BOUND,
};
use witt_core::localglobal::{
    brute_force_represents, candidate_places, finite_field_hyperfield,
    finite_field_quadratic_hyperfield, gauss_valuation, hilbert_symbol,
    local_square_class_hyperfield, quaternion_ramification, PolyOverQ, Valuation,
};
use witt_core::quadfields::{
    distinct_2rank_family, genus_report, imaginary_class_group_oracle, GenusReport,
    REAL_QUADRATIC_TABLE,
};
use witt_core::{Place, SquareClassQ, WittError};

/// Point-search bound used when `--bound` is absent.
pub const DEFAULT_BOUND: i64 = 10_000;

/// Largest prime at which `--oracle` runs the brute-force residue search
/// (cost grows like `p³`).
pub const ORACLE_PRIME_LIMIT: u64 = 300;

/// Largest field order for which `--oracle` rebuilds `Q(F_q)` from the full
/// field table.
pub const ORACLE_FIELD_LIMIT: u64 = 1024;

#[derive(Parser, Debug)]
#[command(
    name = "witt",
    version,
    about = "Witt-equivalence invariants of conic function fields over Q"
)]
struct Cli {
    /// Emit a single JSON envelope {status, result, diagnostics}.
    #[arg(long, global = true)]
    json: bool,
    /// Cross-check against brute-force oracles; disagreement is an error.
    #[arg(long, global = true)]
    oracle: bool,
    /// Height bound for the rational point search.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_BOUND)]
    bound: i64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert symbol (a, b)_v; v is a prime or `inf`.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        v: String,
    },
    /// Ramified places of the quaternion algebra (a, b).
    Quaternion {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Conics a x² + b y² = 1 and their function fields.
    #[command(subcommand)]
    Conic(ConicCommand),
    /// Pairwise-certified family of conic function fields over Q.
    Witnesses,
    /// Finite hyperfields.
    #[command(subcommand)]
    Hyperfield(HyperfieldCommand),
    /// Genus-theory data of Q(√d), or `family K`.
    Quadfield(QuadfieldArgs),
    /// Gauss valuation v_p of a polynomial (coefficients constant term first).
    Gauss {
        p: String,
        #[arg(allow_hyphen_values = true, num_args = 0.., trailing_var_arg = true)]
        coeffs: Vec<String>,
    },
    /// Run one invocation per line of FILE, emitting one JSON envelope each.
    Batch { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ConicCommand {
    /// Whether a x² + b y² = 1 has a rational point.
    Split {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Search for a rational point and parametrize through it.
    Point {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Whether Q_{a,b} and Q_{c,d} are isomorphic.
    Isom {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Certificate of Witt inequivalence of Q_{a,b} and Q_{c,d}.
    Certify {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
}

#[derive(Subcommand, Debug)]
enum HyperfieldCommand {
    /// Q(Q_p) or Q(R) for v a prime or `inf`.
    Local {
        v: String,
        /// Write the table to FILE.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Q(F_q) for an odd prime power q.
    Finite {
        q: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Load a table from FILE and check the axioms.
    Check { file: PathBuf },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct QuadfieldArgs {
    #[command(subcommand)]
    sub: Option<QuadfieldCommand>,
    #[arg(allow_hyphen_values = true, value_name = "D")]
    d: Option<String>,
}

#[derive(Subcommand, Debug)]
enum QuadfieldCommand {
    /// The first K fields d = 5, 5·13, 5·13·17, … with 2-ranks 0..K-1.
    Family { k: String },
}

/// One JSON envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Envelope {
    pub status: &'static str,
    pub result: Value,
    pub diagnostics: Vec<String>,
}

/// Result of [`run`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<WittError> for CliError {
    fn from(e: WittError) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A successful computation. `failed` marks a completed check whose answer
/// is negative (axiom violations), reported with exit code 1.
struct Reply {
    result: Value,
    text: String,
    diagnostics: Vec<String>,
    failed: bool,
}

impl Reply {
    fn new(result: Value, text: String) -> Self {
        Self {
            result,
            text,
            diagnostics: Vec::new(),
            failed: false,
        }
    }

    fn note(mut self, d: impl Into<String>) -> Self {
        self.diagnostics.push(d.into());
        self
    }
}

struct Flags {
    oracle: bool,
    bound: i64,
}

fn rational_arg(token: &str) -> CliResult<Rational> {
    parse_rational(token).map_err(|_| CliError::Usage(format!("malformed number '{token}'")))
}

fn int_arg(token: &str) -> CliResult<i64> {
    token
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("malformed integer '{token}'")))
}

fn uint_arg(token: &str) -> CliResult<u64> {
    token
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("malformed non-negative integer '{token}'")))
}

fn place_arg(token: &str) -> CliResult<Place> {
    if matches!(token, "inf" | "infinity" | "∞") {
        return Ok(Place::Infinite);
    }
    let p = uint_arg(token)
        .map_err(|_| CliError::Usage(format!("malformed place '{token}' (a prime or inf)")))?;
    Ok(Place::finite(p)?)
}

fn strings(places: impl IntoIterator<Item = Place>) -> Vec<String> {
    places.into_iter().map(|v| v.to_string()).collect()
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".into()
    } else {
        items.join(" ")
    }
}

fn oracle_guard(p: u64) -> CliResult<()> {
    if p > ORACLE_PRIME_LIMIT {
        return Err(CliError::Domain(format!(
            "oracle: prime {p} exceeds the brute-force limit {ORACLE_PRIME_LIMIT}"
        )));
    }
    Ok(())
}

/// `(A, B)_v` for squarefree class values, by residue search at finite
/// places and by signs at infinity.
fn oracle_symbol(a: SquareClassQ, b: SquareClassQ, v: Place) -> CliResult<i8> {
    match v {
        Place::Infinite => Ok(if a.sign() < 0 && b.sign() < 0 { -1 } else { 1 }),
        Place::Finite(p) => {
            oracle_guard(p)?;
            let (a, b) = (a.value() as i64, b.value() as i64);
            Ok(if brute_force_represents(a, b, 1, p)? {
                1
            } else {
                -1
            })
        }
    }
}

fn oracle_ramification(a: &Rational, b: &Rational) -> CliResult<Vec<String>> {
    let (ca, cb) = (
        SquareClassQ::from_rational(a)?,
        SquareClassQ::from_rational(b)?,
    );
    let mut out = Vec::new();
    for v in candidate_places(ca, cb) {
        if oracle_symbol(ca, cb, v)? == -1 {
            out.push(v);
        }
    }
    out.sort();
    Ok(strings(out))
}

fn disagreement(
    what: &str,
    formula: impl std::fmt::Debug,
    oracle: impl std::fmt::Debug,
) -> CliError {
    CliError::Domain(format!(
        "oracle disagreement on {what}: formula {formula:?}, oracle {oracle:?}"
    ))
}

fn cmd_hilbert(a: &str, b: &str, v: &str, flags: &Flags) -> CliResult<Reply> {
    let (ra, rb, place) = (rational_arg(a)?, rational_arg(b)?, place_arg(v)?);
    let s = hilbert_symbol(&ra, &rb, place)?;
    let mut reply = Reply::new(
        json!({"a": fmt_rational(&ra), "b": fmt_rational(&rb), "place": place, "symbol": s}),
        format!(
            "({}, {})_{} = {}",
            fmt_rational(&ra),
            fmt_rational(&rb),
            place,
            s
        ),
    );
    if flags.oracle {
        let o = oracle_symbol(
            SquareClassQ::from_rational(&ra)?,
            SquareClassQ::from_rational(&rb)?,
            place,
        )?;
        if o != s {
            return Err(disagreement("hilbert symbol", s, o));
        }
        reply = reply.note("oracle: brute-force symbol agrees");
    }
    Ok(reply)
}

fn cmd_quaternion(a: &str, b: &str, flags: &Flags) -> CliResult<Reply> {
    let (ra, rb) = (rational_arg(a)?, rational_arg(b)?);
    let ram = quaternion_ramification(&ra, &rb)?.to_strings();
    let mut reply = Reply::new(
        json!({"ramified": ram, "split": ram.is_empty()}),
        format!(
            "ramified: {}\nsplit: {}",
            list_or_none(&ram),
            ram.is_empty()
        ),
    );
    if flags.oracle {
        let o = oracle_ramification(&ra, &rb)?;
        if o != ram {
            return Err(disagreement("ramification", &ram, o));
        }
        reply = reply.note("oracle: brute-force ramification agrees");
    }
    Ok(reply)
}

fn cmd_split(a: &str, b: &str, flags: &Flags) -> CliResult<Reply> {
    let (ra, rb) = (rational_arg(a)?, rational_arg(b)?);
    let split = splits(&ra, &rb)?;
    let ram = quaternion_ramification(&ra, &rb)?.to_strings();
    let mut reply = Reply::new(
        json!({"a": fmt_rational(&ra), "b": fmt_rational(&rb), "splits": split, "ramified": ram}),
        format!("splits: {split}\nramified: {}", list_or_none(&ram)),
    );
    if flags.oracle {
        let bound = holzer_bound(&ra, &rb)?;
        let found = find_rational_point(&ra, &rb, bound.min(i64::MAX as u64) as i64)?.is_some();
        if found != split {
            return Err(disagreement("splitting", split, found));
        }
        reply = reply.note(format!("oracle: point search to height {bound} agrees"));
    }
    Ok(reply)
}

fn cmd_point(a: &str, b: &str, flags: &Flags) -> CliResult<Reply> {
    let (ra, rb) = (rational_arg(a)?, rational_arg(b)?);
    let bound = flags.bound;
    let point = find_rational_point(&ra, &rb, bound)?;
    let complete = holzer_bound(&ra, &rb)? <= bound as u64;
    let Some(p0) = point else {
        let mut reply = Reply::new(
            json!({"bound": bound, "point": Value::Null, "parametrization": Value::Null, "conclusive": complete}),
            format!("point: none up to height {bound}\nconclusive: {complete}"),
        );
        if !complete {
            reply = reply
                .note("bound is below the completeness bound; absence of a point is not proved");
        }
        if flags.oracle && complete && splits(&ra, &rb)? {
            return Err(disagreement("point existence", false, true));
        }
        return Ok(reply);
    };
    let par = parametrize(&ra, &rb, &p0)?;
    let coeffs = |c: &[Rational]| c.iter().map(fmt_rational).collect::<Vec<_>>();
    let text = format!(
        "point: ({}, {})\nx(z) = [{}] / [{}]\ny(z) = [{}] / [{}]",
        fmt_rational(&p0.x),
        fmt_rational(&p0.y),
        coeffs(&par.x_num).join(", "),
        coeffs(&par.den).join(", "),
        coeffs(&par.y_num).join(", "),
        coeffs(&par.den).join(", "),
    );
    let mut reply = Reply::new(
        json!({
            "bound": bound,
            "point": p0,
            "parametrization": {"x_num": coeffs(&par.x_num), "y_num": coeffs(&par.y_num), "den": coeffs(&par.den)},
            "conclusive": true,
        }),
        text,
    );
    if flags.oracle {
        if !splits(&ra, &rb)? {
            return Err(disagreement("point existence", true, false));
        }
        reply = reply.note("oracle: splitting criterion agrees");
    }
    Ok(reply)
}

fn four(args: [&String; 4]) -> CliResult<[Rational; 4]> {
    let [a, b, c, d] = args.map(|t| rational_arg(t));
    Ok([a?, b?, c?, d?])
}

fn cmd_isom(args: [&String; 4], flags: &Flags) -> CliResult<Reply> {
    let [a, b, c, d] = four(args)?;
    let iso = conic_isomorphic(&a, &b, &c, &d)?;
    let (rk, rl) = (
        quaternion_ramification(&a, &b)?.to_strings(),
        quaternion_ramification(&c, &d)?.to_strings(),
    );
    let mut reply = Reply::new(
        json!({"isomorphic": iso, "ram_k": rk, "ram_l": rl}),
        format!(
            "isomorphic: {iso}\nram_k: {}\nram_l: {}",
            list_or_none(&rk),
            list_or_none(&rl)
        ),
    );
    if flags.oracle {
        let o = oracle_ramification(&a, &b)? == oracle_ramification(&c, &d)?;
        if o != iso {
            return Err(disagreement("isomorphism", iso, o));
        }
        reply = reply.note("oracle: brute-force ramification agrees");
    }
    Ok(reply)
}

fn evidence_text(e: &Evidence) -> String {
    let v = serde_json::to_value(e).expect("evidence serializes");
    let data = &v["data"];
    let mut lines = Vec::new();
    if let Some(obj) = data.as_object() {
        for (k, x) in obj {
            lines.push(format!("{k}: {x}"));
        }
    }
    lines.join("\n")
}

fn cmd_certify(args: [&String; 4], flags: &Flags) -> CliResult<Reply> {
    let [a, b, c, d] = four(args)?;
    let cert = witt_distinguish(&a, &b, &c, &d)?;
    if !verify_certificate(&cert, &a, &b, &c, &d)? {
        return Err(CliError::Domain("certificate failed verification".into()));
    }
    let mut text = format!("certificate: {}", cert.kind());
    let details = evidence_text(&cert.evidence);
    if !details.is_empty() {
        text = format!("{text}\n{details}");
    }
    let mut reply = Reply::new(cert.to_json(), text).note("certificate verified");
    if flags.oracle {
        let same = oracle_ramification(&a, &b)? == oracle_ramification(&c, &d)?;
        if same && !cert.is_indistinguishable() {
            return Err(disagreement(
                "certificate",
                cert.kind(),
                "isomorphic fields",
            ));
        }
        reply = reply.note("oracle: brute-force ramification consistent");
    }
    Ok(reply)
}

fn cmd_witnesses(flags: &Flags) -> CliResult<Reply> {
    let w = witness_set()?;
    let n = w.fields.len();
    for i in 0..n {
        for j in i + 1..n {
            let cert = w.certificate(i, j).expect("upper triangle is filled");
            let (k, l) = (&w.fields[i], &w.fields[j]);
            let ok = verify_certificate(
                cert,
                &k.a.to_rational(),
                &k.b.to_rational(),
                &l.a.to_rational(),
                &l.b.to_rational(),
            )?;
            if !ok || cert.is_indistinguishable() {
                return Err(CliError::Domain(format!(
                    "pair ({i}, {j}) is not certified"
                )));
            }
        }
    }
    let mut lines: Vec<String> = w
        .fields
        .iter()
        .enumerate()
        .map(|(i, f)| format!("K{i} = {f}"))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            lines.push(format!(
                "K{i} vs K{j}: {}",
                w.certificate(i, j).unwrap().kind()
            ));
        }
    }
    let mut reply = Reply::new(
        serde_json::to_value(&w).expect("witness set serializes"),
        lines.join("\n"),
    )
    .note(format!(
        "{n} fields, all {} pairs certified and verified",
        n * (n - 1) / 2
    ));
    if flags.oracle {
        for f in &w.fields {
            let (a, b) = (f.a.to_rational(), f.b.to_rational());
            let o = oracle_ramification(&a, &b)?;
            if o != f.ramification().to_strings() {
                return Err(disagreement(
                    &format!("ramification of {f}"),
                    f.ramification().to_strings(),
                    o,
                ));
            }
        }
        reply = reply.note("oracle: brute-force ramification agrees for every field");
    }
    Ok(reply)
}

fn axioms_json(report: &AxiomReport) -> Value {
    json!({
        "ok": report.is_ok(),
        "violated": report.violated_axioms(),
        "violations": report.violations,
    })
}

fn table_text(name: &str, h: &FiniteHyperfield, report: &AxiomReport) -> String {
    let mut lines = vec![
        format!("{name}: {} elements", h.len()),
        format!("elements: {}", h.labels().join(" ")),
    ];
    for a in h.elements() {
        for b in h.elements().filter(|&b| b >= a) {
            let sum: Vec<&str> = h.add(a, b).iter().map(|&c| h.label(c)).collect();
            lines.push(format!(
                "{} + {} = {{{}}}",
                h.label(a),
                h.label(b),
                sum.join(", ")
            ));
        }
    }
    lines.push(axioms_line(report));
    lines.join("\n")
}

fn axioms_line(report: &AxiomReport) -> String {
    if report.is_ok() {
        "axioms: ok".into()
    } else {
        let names: Vec<&str> = report.violated_axioms().iter().map(|a| a.label()).collect();
        format!("axioms: violated {}", names.join(" "))
    }
}

/// Writes `h` in the hyperfield file format.
pub fn export_hyperfield(h: &FiniteHyperfield, path: &Path) -> CliResult<()> {
    fs::write(path, h.to_json_string() + "\n")
        .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))
}

/// Reads a table written by [`export_hyperfield`] (or by hand).
pub fn import_hyperfield(path: &Path) -> CliResult<FiniteHyperfield> {
    let s = fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
    FiniteHyperfield::from_json_str(&s)
        .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn table_reply(name: &str, h: &FiniteHyperfield, out: Option<&Path>) -> CliResult<Reply> {
    let report = verify_axioms(h);
    let mut reply = Reply::new(
        json!({"name": name, "size": h.len(), "axioms": axioms_json(&report), "table": h.to_json()}),
        table_text(name, h, &report),
    );
    if let Some(path) = out {
        export_hyperfield(h, path)?;
        reply = reply.note(format!("table written to {}", path.display()));
    }
    reply.failed = !report.is_ok();
    Ok(reply)
}

fn cmd_hyperfield_local(v: &str, out: Option<&Path>, flags: &Flags) -> CliResult<Reply> {
    let place = place_arg(v)?;
    let h = local_square_class_hyperfield(place);
    let name = match place {
        Place::Infinite => "Q(R)".to_string(),
        Place::Finite(p) => format!("Q(Q_{p})"),
    };
    let mut reply = table_reply(&name, &h, out)?;
    if flags.oracle {
        if let Place::Finite(p) = place {
            oracle_guard(p)?;
            // c ∈ a + b for non-zero classes iff a x² + b y² = c z² is solvable
            for a in h.nonzero() {
                for b in h.nonzero() {
                    for c in h.nonzero() {
                        let val = |i: usize| int_arg(h.label(i));
                        let o = brute_force_represents(val(a)?, val(b)?, val(c)?, p)?;
                        if o != h.sum_contains(a, b, c) {
                            return Err(disagreement(
                                &format!("{} ∈ {} + {}", h.label(c), h.label(a), h.label(b)),
                                h.sum_contains(a, b, c),
                                o,
                            ));
                        }
                    }
                }
            }
            reply = reply.note("oracle: brute-force sums agree");
        } else {
            reply = reply.note("oracle: no brute-force oracle at inf");
        }
    }
    Ok(reply)
}

fn cmd_hyperfield_finite(q: &str, out: Option<&Path>, flags: &Flags) -> CliResult<Reply> {
    let q = uint_arg(q)?;
    let h = finite_field_quadratic_hyperfield(q)?;
    let mut reply = table_reply(&format!("Q(F_{q})"), &h, out)?;
    if flags.oracle {
        if q > ORACLE_FIELD_LIMIT {
            return Err(CliError::Domain(format!(
                "oracle: q = {q} exceeds the field-table limit {ORACLE_FIELD_LIMIT}"
            )));
        }
        // F_q as a hyperfield, divided by its squares
        let f = finite_field_hyperfield(q)?;
        let squares = SubgroupSelection::new(&f, f.nonzero().map(|x| f.mul(x, x)))?;
        let quo = quotient(&f, &squares)?;
        if find_isomorphisms(&quo, &h, DEFAULT_ISOMORPHISM_BOUND)?.is_empty() {
            return Err(disagreement("Q(F_q)", "table", "F_q / F_q*²"));
        }
        reply = reply.note("oracle: isomorphic to the quotient of F_q by its squares");
    }
    Ok(reply)
}

fn cmd_hyperfield_check(file: &Path) -> CliResult<Reply> {
    let h = import_hyperfield(file)?;
    let report = verify_axioms(&h);
    let mut reply = Reply::new(
        json!({"file": file.display().to_string(), "size": h.len(), "axioms": axioms_json(&report)}),
        format!(
            "{}: {} elements\n{}",
            file.display(),
            h.len(),
            axioms_line(&report)
        ),
    );
    for v in &report.violations {
        let w: Vec<&str> = v.witness.iter().map(|&i| h.label(i)).collect();
        reply = reply.note(format!("axiom {} fails at ({})", v.axiom, w.join(", ")));
    }
    reply.failed = !report.is_ok();
    Ok(reply)
}

fn report_text(r: &GenusReport) -> String {
    format!(
        "d = {}: discriminant {}, N = {}, branch {}, 2-rank {}, vk 2-rank {}",
        r.d,
        r.discriminant,
        r.n,
        serde_json::to_value(r.branch).unwrap().as_str().unwrap(),
        r.two_rank,
        r.vk_two_rank
    )
}

/// Checks a report against the form oracle (d < 0) or the reference table.
fn quadfield_oracle(r: &GenusReport) -> CliResult<String> {
    if r.d < 0 {
        let g = imaginary_class_group_oracle(r.d)?;
        if g.two_rank != r.two_rank {
            return Err(disagreement(
                &format!("2-rank of d = {}", r.d),
                r.two_rank,
                g.two_rank,
            ));
        }
        return Ok(format!(
            "oracle: d = {}: {} reduced forms, 2-rank {} agrees",
            r.d, g.order, g.two_rank
        ));
    }
    match REAL_QUADRATIC_TABLE.iter().find(|e| e.d == r.d) {
        Some(e) if e.two_rank != r.two_rank => Err(disagreement(
            &format!("2-rank of d = {}", r.d),
            r.two_rank,
            e.two_rank,
        )),
        Some(e) => {
            let mut s = format!(
                "oracle: d = {}: reference table 2-rank {} agrees",
                r.d, e.two_rank
            );
            if e.narrow_differs() {
                s += &format!(" (narrow 2-rank {})", e.narrow_two_rank);
            }
            Ok(s)
        }
        None => Err(CliError::Domain(format!(
            "oracle: no reference entry for real d = {}",
            r.d
        ))),
    }
}

fn cmd_quadfield(args: &QuadfieldArgs, flags: &Flags) -> CliResult<Reply> {
    match (&args.sub, &args.d) {
        (Some(QuadfieldCommand::Family { k }), _) => {
            let k = uint_arg(k)?;
            let ds = distinct_2rank_family(k as usize)?;
            let reports = ds
                .iter()
                .map(|&d| genus_report(d))
                .collect::<Result<Vec<_>, _>>()?;
            let text = reports
                .iter()
                .map(report_text)
                .collect::<Vec<_>>()
                .join("\n");
            let mut reply = Reply::new(json!({"fields": reports}), text);
            if flags.oracle {
                for r in &reports {
                    match quadfield_oracle(r) {
                        Ok(s) => reply = reply.note(s),
                        Err(CliError::Domain(m)) if m.starts_with("oracle: no reference") => {
                            reply = reply.note(m)
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            Ok(reply)
        }
        (None, Some(d)) => {
            let r = genus_report(int_arg(d)?)?;
            let mut reply = Reply::new(
                serde_json::to_value(&r).expect("report serializes"),
                report_text(&r),
            );
            if let Some(e) = REAL_QUADRATIC_TABLE
                .iter()
                .find(|e| e.d == r.d && e.narrow_differs())
            {
                reply = reply.note(format!(
                    "narrow class group 2-rank is {}, wide is {}",
                    e.narrow_two_rank, e.two_rank
                ));
            }
            if flags.oracle {
                reply = reply.note(quadfield_oracle(&r)?);
            }
            Ok(reply)
        }
        (None, None) => Err(CliError::Usage("quadfield needs D or `family K`".into())),
    }
}

fn cmd_gauss(p: &str, coeffs: &[String], flags: &Flags) -> CliResult<Reply> {
    let p = uint_arg(p)?;
    if !is_prime(p) {
        return Err(CliError::Domain(format!("{p} is not prime")));
    }
    let cs = coeffs
        .iter()
        .map(|t| rational_arg(t))
        .collect::<CliResult<Vec<_>>>()?;
    let f = PolyOverQ::new(cs);
    let v = gauss_valuation(&f, p)?;
    let shown: Vec<String> = f.coeffs().iter().map(fmt_rational).collect();
    let mut reply = Reply::new(
        json!({"p": p, "coeffs": shown, "valuation": v.to_string()}),
        format!("v_{p}([{}]) = {v}", shown.join(", ")),
    );
    if flags.oracle {
        // multiplicativity of the Gauss valuation on f²
        let sq = gauss_valuation(&f.mul(&f), p)?;
        let expected = match v {
            Valuation::Finite(k) => Valuation::Finite(2 * k),
            inf => inf,
        };
        if sq != expected {
            return Err(disagreement("v(f²) = 2 v(f)", expected, sq));
        }
        reply = reply.note("oracle: v(f²) = 2 v(f) holds");
    }
    Ok(reply)
}

fn dispatch(cli: &Cli) -> CliResult<Reply> {
    let flags = Flags {
        oracle: cli.oracle,
        bound: cli.bound,
    };
    match &cli.command {
        Command::Hilbert { a, b, v } => cmd_hilbert(a, b, v, &flags),
        Command::Quaternion { a, b } => cmd_quaternion(a, b, &flags),
        Command::Conic(c) => match c {
            ConicCommand::Split { a, b } => cmd_split(a, b, &flags),
            ConicCommand::Point { a, b } => cmd_point(a, b, &flags),
            ConicCommand::Isom { a, b, c, d } => cmd_isom([a, b, c, d], &flags),
            ConicCommand::Certify { a, b, c, d } => cmd_certify([a, b, c, d], &flags),
        },
        Command::Witnesses => cmd_witnesses(&flags),
        Command::Hyperfield(h) => match h {
            HyperfieldCommand::Local { v, out } => cmd_hyperfield_local(v, out.as_deref(), &flags),
            HyperfieldCommand::Finite { q, out } => {
                cmd_hyperfield_finite(q, out.as_deref(), &flags)
            }
            HyperfieldCommand::Check { file } => cmd_hyperfield_check(file),
        },
        Command::Quadfield(args) => cmd_quadfield(args, &flags),
        Command::Gauss { p, coeffs } => cmd_gauss(p, coeffs, &flags),
        Command::Batch { .. } => unreachable!("batch is handled by run"),
    }
}

fn envelope_of(outcome: &CliResult<Reply>) -> Envelope {
    match outcome {
        Ok(r) => Envelope {
            status: if r.failed { "error" } else { "ok" },
            result: r.result.clone(),
            diagnostics: r.diagnostics.clone(),
        },
        Err(e) => Envelope {
            status: "error",
            result: Value::Null,
            diagnostics: vec![e.message().to_string()],
        },
    }
}

fn exit_code(outcome: &CliResult<Reply>) -> i32 {
    match outcome {
        Ok(r) => i32::from(r.failed),
        Err(e) => e.code(),
    }
}

fn usage_from_clap(e: &clap::Error) -> CliError {
    let msg = e.render().to_string();
    CliError::Usage(msg.trim().trim_start_matches("error: ").to_string())
}

fn parse(args: &[String]) -> std::result::Result<Cli, clap::Error> {
    Cli::try_parse_from(std::iter::once("witt".to_string()).chain(args.iter().cloned()))
}

/// Evaluates one invocation to an envelope and exit code; used by batch.
fn evaluate(args: &[String]) -> (i32, Envelope) {
    let outcome = match parse(args) {
        Ok(cli) if matches!(cli.command, Command::Batch { .. }) => {
            Err(CliError::Usage("batch cannot be nested".into()))
        }
        Ok(cli) => dispatch(&cli),
        Err(e) => Err(usage_from_clap(&e)),
    };
    (exit_code(&outcome), envelope_of(&outcome))
}

fn run_batch(file: &Path, inherit_oracle: bool) -> Output {
    let content = match fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            return Output {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: cannot read {}: {e}\n", file.display()),
            }
        }
    };
    let lines: Vec<Vec<String>> = content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut args: Vec<String> = l.split_whitespace().map(String::from).collect();
            if inherit_oracle && !args.iter().any(|a| a == "--oracle") {
                args.push("--oracle".into());
            }
            args
        })
        .collect();
    // par_iter().map().collect() preserves input order
    let results: Vec<(i32, Envelope)> = lines.par_iter().map(|args| evaluate(args)).collect();
    let mut stdout = String::new();
    for (_, env) in &results {
        stdout += &serde_json::to_string(env).expect("envelope serializes");
        stdout.push('\n');
    }
    let failed = results.iter().filter(|(c, _)| *c != 0).count();
    Output {
        code: i32::from(failed > 0),
        stdout,
        stderr: if failed > 0 {
            format!("{failed} of {} lines failed\n", results.len())
        } else {
            String::new()
        },
    }
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let json_mode = args.iter().any(|a| a == "--json");
    let cli = match parse(&args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Output {
                code: 0,
                stdout: e.render().to_string(),
                stderr: String::new(),
            }
        }
        Err(e) => {
            let outcome = Err(usage_from_clap(&e));
            return emit(&outcome, json_mode);
        }
    };
    if let Command::Batch { file } = &cli.command {
        return run_batch(file, cli.oracle);
    }
    emit(&dispatch(&cli), json_mode)
}

fn emit(outcome: &CliResult<Reply>, json_mode: bool) -> Output {
    let code = exit_code(outcome);
    if json_mode {
        let env = envelope_of(outcome);
        return Output {
            code,
            stdout: serde_json::to_string_pretty(&env).expect("envelope serializes") + "\n",
            stderr: String::new(),
        };
    }
    match outcome {
        Ok(r) => {
            let mut stdout = r.text.clone();
            stdout.push('\n');
            for d in &r.diagnostics {
                stdout += &format!("note: {d}\n");
            }
            Output {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Output {
            code,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message()),
        },
    }
}
