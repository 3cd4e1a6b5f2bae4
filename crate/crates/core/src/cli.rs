//! Group-spec and field parsing plus the command runner behind the binary.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::json;

use crate::codes::{DistanceMethod, DEFAULT_BUDGET};
use crate::error::{Error, ParseError};
use crate::field::FieldCtx;
use crate::group::{Group, GroupError, DEFAULT_SUBGROUP_BOUND};
use crate::idempotents::primitive_idempotents;
use crate::search::{self, SearchOptions, SearchReport, Strategy, DEFAULT_NORMAL_ELEMENTS};
use crate::shoda::{self, fmt_set};

/// Parsed group spec:
/// `cyclic(n) | metacyclic(m,n,r) | direct(spec,spec) | cayley(path)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Metacyclic(usize, usize, usize),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Cayley(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Metacyclic(m, n, r) => write!(f, "metacyclic({m},{n},{r})"),
            GroupSpec::Direct(a, b) => write!(f, "direct({a},{b})"),
            GroupSpec::Cayley(p) => write!(f, "cayley({})", p.display()),
        }
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group, GroupError> {
        match self {
            GroupSpec::Cyclic(n) => Group::cyclic(*n),
            GroupSpec::Metacyclic(m, n, r) => Group::metacyclic(*m, *n, *r),
            GroupSpec::Direct(a, b) => Ok(Group::direct(&a.build()?, &b.build()?)),
            GroupSpec::Cayley(p) => Group::load_cayley(p),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            pos: start,
            message: "integer out of range".into(),
        })
    }

    fn spec(&mut self) -> Result<GroupSpec, ParseError> {
        let start = self.pos;
        let name = self.ident();
        let spec = match name {
            "cyclic" => {
                self.expect('(')?;
                let n = self.int()?;
                GroupSpec::Cyclic(n)
            }
            "metacyclic" => {
                self.expect('(')?;
                let m = self.int()?;
                self.expect(',')?;
                let n = self.int()?;
                self.expect(',')?;
                let r = self.int()?;
                GroupSpec::Metacyclic(m, n, r)
            }
            "direct" => {
                self.expect('(')?;
                let a = self.spec()?;
                self.expect(',')?;
                let b = self.spec()?;
                GroupSpec::Direct(Box::new(a), Box::new(b))
            }
            "cayley" => {
                self.expect('(')?;
                let rest = &self.src[self.pos..];
                let Some(len) = rest.find(')') else {
                    return self.err("unterminated path");
                };
                let path = rest[..len].trim();
                if path.is_empty() {
                    return self.err("empty path");
                }
                self.pos += len;
                GroupSpec::Cayley(PathBuf::from(path))
            }
            "" => return self.err("expected a group constructor"),
            other => {
                return Err(ParseError {
                    pos: start,
                    message: format!("unknown constructor '{other}'"),
                })
            }
        };
        self.expect(')')?;
        Ok(spec)
    }
}

pub fn parse_group_spec(s: &str) -> Result<GroupSpec, ParseError> {
    let mut p = Parser { src: s, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != s.len() {
        return p.err("trailing input");
    }
    Ok(spec)
}

/// Parses and builds a group.
pub fn build_group(s: &str) -> Result<Group, Error> {
    Ok(parse_group_spec(s)?.build()?)
}

/// `gf(q)` or `gf(p^k)`, case-insensitive.
pub fn parse_field(s: &str) -> Result<FieldCtx, Error> {
    let lower = s.trim().to_ascii_lowercase();
    let err = |pos: usize, message: &str| {
        Error::Parse(ParseError {
            pos,
            message: message.into(),
        })
    };
    let inner = lower
        .strip_prefix("gf(")
        .ok_or_else(|| err(0, "expected 'gf('"))?
        .strip_suffix(')')
        .ok_or_else(|| err(lower.len(), "expected ')'"))?;
    let num = |t: &str, pos: usize| t.trim().parse::<u64>().map_err(|_| err(pos, "expected an integer"));
    let field = match inner.split_once('^') {
        Some((p, k)) => {
            let p = num(p, 3)?;
            let k = num(k, 4 + p.to_string().len())?;
            let k = u32::try_from(k).map_err(|_| err(3, "exponent out of range"))?;
            let p = u32::try_from(p).map_err(|_| err(3, "characteristic out of range"))?;
            FieldCtx::new(p, k)?
        }
        None => FieldCtx::with_order(num(inner, 3)?)?,
    };
    Ok(field)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Ssp,
    Wedderburn,
    Idempotents,
    Codes,
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group_spec: String,
    pub field: String,
    pub command: Command,
    pub budget: u64,
    pub output: OutputFormat,
    pub export_path: Option<PathBuf>,
    pub normal_elements: usize,
    pub method: DistanceMethod,
}

impl RunConfig {
    pub fn new(group_spec: &str, field: &str, command: Command) -> Self {
        RunConfig {
            group_spec: group_spec.to_string(),
            field: field.to_string(),
            command,
            budget: DEFAULT_BUDGET,
            output: OutputFormat::Text,
            export_path: None,
            normal_elements: DEFAULT_NORMAL_ELEMENTS,
            method: DistanceMethod::Gray,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub stdout: String,
    /// 0 on success, 2 when every component was unsupported.
    pub exit_code: i32,
}

struct Ctx {
    spec: String,
    g: Arc<Group>,
    field: FieldCtx,
}

impl Ctx {
    fn header(&self) -> String {
        let labels: Vec<String> = self.g.elements().map(|x| format!("{x}={}", self.g.label(x))).collect();
        format!(
            "# group {} order {} field {} ordering_hash {}\n# ordering {}\n",
            self.spec,
            self.g.order(),
            self.field.name(),
            self.g.ordering_hash(),
            labels.join(" ")
        )
    }
}

pub fn run(config: &RunConfig) -> Result<RunOutput, Error> {
    let spec = parse_group_spec(&config.group_spec)?;
    let g = Arc::new(spec.build()?);
    let field = parse_field(&config.field)?;
    let p = field.p() as u64;
    if (g.order() as u64).is_multiple_of(p) {
        return Err(shoda::ShodaError::CharacteristicDividesOrder { p, order: g.order() }.into());
    }
    let ctx = Ctx {
        spec: spec.to_string(),
        g,
        field,
    };
    let json = config.output == OutputFormat::Json;
    match config.command {
        Command::Ssp => ssp(&ctx, json),
        Command::Wedderburn => wedderburn(&ctx, json),
        Command::Idempotents => idempotents(&ctx, json),
        Command::Codes | Command::Search => codes(&ctx, config),
    }
}

fn ok(stdout: String) -> Result<RunOutput, Error> {
    Ok(RunOutput { stdout, exit_code: 0 })
}

fn twisting_name(t: &shoda::Twisting) -> &'static str {
    if t.is_trivial() {
        "trivial"
    } else {
        "nontrivial"
    }
}

fn ssp(ctx: &Ctx, json: bool) -> Result<RunOutput, Error> {
    let s = ctx.field.size() as u64;
    let pairs = shoda::strong_shoda_pairs(&ctx.g, &ctx.field, DEFAULT_SUBGROUP_BOUND)?;
    let mut rows = Vec::new();
    let mut text = ctx.header();
    for (pair, comps) in &pairs {
        let comp = comps.first().expect("a faithful class exists");
        let o = pair.o(s)?;
        text.push_str(&format!(
            "{} [H:K]={} o={} E={} twisting={}\n",
            pair.label(),
            pair.index(),
            o,
            fmt_set(comp.stabilizer.elements()),
            twisting_name(&comp.twisting)
        ));
        rows.push(json!({
            "h": pair.h().elements(),
            "k": pair.k().elements(),
            "index": pair.index(),
            "o": o,
            "e": comp.stabilizer.elements(),
            "twisting": twisting_name(&comp.twisting),
        }));
    }
    if json {
        return ok(pretty(&json!({
            "group": ctx.spec,
            "field": ctx.field.name(),
            "ordering_hash": ctx.g.ordering_hash(),
            "pairs": rows,
        })));
    }
    ok(text)
}

fn wedderburn(ctx: &Ctx, json: bool) -> Result<RunOutput, Error> {
    let report = shoda::wedderburn_report(&ctx.g, &ctx.field, DEFAULT_SUBGROUP_BOUND)?;
    let mut text = ctx.header();
    let mut rows = Vec::new();
    let mut summands = Vec::new();
    for c in &report.components {
        let summand = format!("M_{}(F_{})", c.matrix_size, c.field_order);
        text.push_str(&format!(
            "{} class={} {} dim={} twisting={}\n",
            c.pair.label(),
            fmt_class(c.class.residues()),
            summand,
            c.dim,
            twisting_name(&c.twisting)
        ));
        rows.push(json!({
            "pair": c.pair.label(),
            "class": c.class.residues(),
            "matrix_size": c.matrix_size,
            "field_order": c.field_order,
            "dim": c.dim,
            "twisting": twisting_name(&c.twisting),
        }));
        summands.push(summand);
    }
    text.push_str(&format!(
        "total_dim={} sums_to_one={} orthogonal={}\ndecomposition {}\n",
        report.total_dim(),
        report.sums_to_one,
        report.orthogonal,
        summands.join(" + ")
    ));
    if json {
        return ok(pretty(&json!({
            "group": ctx.spec,
            "field": ctx.field.name(),
            "components": rows,
            "total_dim": report.total_dim(),
            "sums_to_one": report.sums_to_one,
            "orthogonal": report.orthogonal,
        })));
    }
    ok(text)
}

fn idempotents(ctx: &Ctx, json: bool) -> Result<RunOutput, Error> {
    let pairs = shoda::strong_shoda_pairs(&ctx.g, &ctx.field, DEFAULT_SUBGROUP_BOUND)?;
    let mut text = ctx.header();
    let mut rows = Vec::new();
    let mut supported = 0;
    let mut unsupported = 0;
    for comp in pairs.iter().flat_map(|(_, c)| c) {
        let head = format!("{} class={}", comp.pair.label(), fmt_class(comp.class.residues()));
        match primitive_idempotents(&ctx.g, comp, &ctx.field) {
            Ok(set) => {
                supported += 1;
                let method = format!("{:?}", set.method).to_lowercase();
                text.push_str(&format!("component {head} method={method}\n"));
                for note in &set.notes {
                    text.push_str(&format!("  note {note}\n"));
                }
                let mut items = Vec::new();
                for (i, (e, prov)) in set.idems.iter().zip(&set.provenance).enumerate() {
                    let prov = search::provenance_label(prov);
                    text.push_str(&format!("  e[{i}] {prov} = {}\n", e.dump()));
                    items.push(json!({"index": i, "provenance": prov, "element": e.dump()}));
                }
                rows.push(json!({
                    "pair": comp.pair.label(),
                    "class": comp.class.residues(),
                    "method": method,
                    "notes": set.notes,
                    "idempotents": items,
                }));
            }
            Err(err) => {
                unsupported += 1;
                text.push_str(&format!("component {head} skipped: {err}\n"));
                rows.push(json!({
                    "pair": comp.pair.label(),
                    "class": comp.class.residues(),
                    "skipped": err.to_string(),
                }));
            }
        }
    }
    let exit_code = if supported == 0 && unsupported > 0 { 2 } else { 0 };
    let stdout = if json {
        pretty(&json!({"group": ctx.spec, "field": ctx.field.name(), "components": rows}))
    } else {
        text
    };
    Ok(RunOutput { stdout, exit_code })
}

fn codes(ctx: &Ctx, config: &RunConfig) -> Result<RunOutput, Error> {
    let strategy = match config.command {
        Command::Search => Strategy::AllIdempotents,
        _ => Strategy::AllComponents,
    };
    let opts = SearchOptions {
        strategy,
        budget: config.budget,
        subgroup_bound: DEFAULT_SUBGROUP_BOUND,
        method: config.method,
        normal_elements: config.normal_elements,
    };
    let report = search::code_search(&ctx.g, &ctx.spec, &ctx.field, &opts)?;
    if let Some(dir) = &config.export_path {
        export(&report, dir)?;
    }
    let exit_code = if report.components.is_empty() && !report.skipped.is_empty() {
        2
    } else {
        0
    };
    let stdout = match (config.output, config.command) {
        (OutputFormat::Json, _) => pretty(&serde_json::to_value(&report).expect("report serializes")),
        (OutputFormat::Text, Command::Search) => search_text(ctx, &report),
        (OutputFormat::Text, _) => codes_text(ctx, &report),
    };
    Ok(RunOutput { stdout, exit_code })
}

fn codes_text(ctx: &Ctx, report: &SearchReport) -> String {
    let mut text = ctx.header();
    for c in &report.components {
        text.push_str(&format!(
            "component {} class={} M_{}(F_{}) method={}",
            c.pair,
            fmt_class(&c.class),
            c.matrix_size,
            c.field_order,
            c.method
        ));
        if let Some(w) = c.normal_element {
            text.push_str(&format!(" w={w}"));
        }
        text.push('\n');
        for code in &c.codes {
            let d = match (code.d, code.d_upper_bound) {
                (Some(d), _) => d.to_string(),
                (None, Some(b)) => format!("<={b} (budget exceeded)"),
                (None, None) => "?".into(),
            };
            text.push_str(&format!(
                "  [{},{},{}] idempotent={} {}",
                code.n, code.k, d, code.idempotent_index, code.provenance
            ));
            if let Some(w) = &code.weights {
                let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                text.push_str(&format!(" weights={}", w.join(",")));
            }
            text.push('\n');
        }
        for f in &c.failures {
            text.push_str(&format!("  failure {f}\n"));
        }
    }
    for s in &report.skipped {
        text.push_str(&format!("skipped {} class={} reason={}\n", s.pair, fmt_class(&s.class), s.reason));
    }
    text
}

fn search_text(ctx: &Ctx, report: &SearchReport) -> String {
    let mut text = ctx.header();
    for (k, d) in report.best_by_dimension() {
        text.push_str(&format!(
            "{} {} n={} k={} d={}\n",
            report.group, report.field, report.order, k, d
        ));
    }
    for s in &report.skipped {
        text.push_str(&format!("skipped {} class={} reason={}\n", s.pair, fmt_class(&s.class), s.reason));
    }
    text.push_str(&format!("time_ms={}\n", report.timing_ms.unwrap_or(0)));
    text
}

/// One file per code, `c<component>_e<idempotent>.gen`, in `dir`.
fn export(report: &SearchReport, dir: &Path) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for (ci, c) in report.components.iter().enumerate() {
        for code in &c.codes {
            let path = dir.join(format!("c{ci}_e{}.gen", code.idempotent_index));
            std::fs::write(&path, &code.generator).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(())
}

fn fmt_class(residues: &[u64]) -> String {
    let parts: Vec<String> = residues.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

/// JSON body for a failed run.
pub fn error_json(err: &Error) -> String {
    pretty(&json!({"error": {"code": err.code(), "message": err.to_string()}}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        for s in [
            "cyclic(1)",
            "metacyclic(9,3,4)",
            "direct(metacyclic(7,3,4),cyclic(5))",
            "cayley(fixtures/q8.cayley)",
        ] {
            assert_eq!(parse_group_spec(s).unwrap().to_string(), s);
        }
        let spaced = parse_group_spec(" direct( cyclic(2) , cyclic (3) ) ").unwrap();
        assert_eq!(spaced.to_string(), "direct(cyclic(2),cyclic(3))");
        assert_eq!(build_group("metacyclic(9,3,4)").unwrap().order(), 27);
        assert_eq!(build_group("direct(metacyclic(7,3,4),cyclic(5))").unwrap().order(), 105);
        assert_eq!(build_group("cyclic(1)").unwrap().order(), 1);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(parse_group_spec("cyclic(x)").unwrap_err().pos, 7);
        assert_eq!(parse_group_spec("direct(cyclic(2) cyclic(3))").unwrap_err().pos, 17);
        assert_eq!(parse_group_spec("foo(1)").unwrap_err().pos, 0);
        assert_eq!(parse_group_spec("cyclic(2)x").unwrap_err().pos, 9);
        assert!(matches!(
            build_group("metacyclic(7,3,3)"),
            Err(Error::Group(GroupError::BadParameters(_)))
        ));
    }

    #[test]
    fn parses_fields() {
        assert_eq!(parse_field("gf(4)").unwrap().size(), 4);
        assert_eq!(parse_field("GF(2^3)").unwrap().size(), 8);
        assert_eq!(parse_field("gf(5)").unwrap().name(), "gf(5)");
        assert!(parse_field("gf(6)").is_err());
        assert!(parse_field("f(2)").is_err());
    }

    #[test]
    fn wedderburn_of_c3_over_f2() {
        let out = run(&RunConfig::new("cyclic(3)", "gf(2)", Command::Wedderburn)).unwrap();
        let line = out.stdout.lines().find(|l| l.starts_with("decomposition ")).unwrap();
        let mut parts: Vec<&str> = line["decomposition ".len()..].split(" + ").collect();
        parts.sort();
        assert_eq!(parts, ["M_1(F_2)", "M_1(F_4)"]);
    }

    #[test]
    fn ssp_lines() {
        let out = run(&RunConfig::new("metacyclic(11,5,3)", "gf(2)", Command::Ssp)).unwrap();
        assert!(out
            .stdout
            .lines()
            .any(|l| l.starts_with("H={0,1,2,3,4,5,6,7,8,9,10} K={0} [H:K]=11 o=10 E=")));
    }

    #[test]
    fn rejects_modular_case() {
        let err = run(&RunConfig::new("cyclic(4)", "gf(2)", Command::Ssp)).unwrap_err();
        assert_eq!(err.code(), "not_semisimple");
    }
}
