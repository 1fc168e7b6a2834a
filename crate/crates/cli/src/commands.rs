use crate::report::{Report, Table};
use crate::{Cli, Cmd, Global, Outcome};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use kwall_core::exactnum::{parse_rational, Rational, SurdSum};
use kwall_core::hkl::{
    audit_dim_formula, cone_report, hkl_param, map_walls, reproduce_row, HklValue, WallAtlas,
    PREDICTED_N,
};
use kwall_core::pairs::{one_ps_vector, parse_curve, CurveJson, CurvePair};
use kwall_core::stability::{
    beta, enumerate_walls, first_wall_bound, index3_certificate, quotient_point_certificate,
    threshold, BetaReport, Valuation, Verdict, WallCandidate,
};
use kwall_core::surface::{
    builtin_surface, zariski_decompose, DivisorClass, Surface, SurfaceModel,
};
use kwall_core::volume::{chart_profile, compare_s, resolve_case1p, ChartCase, ChartTag};
use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurfaceSel {
    F1,
    Blp114,
    All,
}

impl SurfaceSel {
    fn surfaces(self) -> Vec<Surface> {
        match self {
            SurfaceSel::F1 => vec![Surface::F1],
            SurfaceSel::Blp114 => vec![Surface::BlP114],
            SurfaceSel::All => Surface::ALL.to_vec(),
        }
    }
}

#[derive(Args, Debug)]
pub struct WallsArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub surface: SurfaceSel,
    /// One row per center curve instead of one per wall.
    #[arg(long)]
    pub centers: bool,
    /// Exit with status 1 unless the walls found agree with the atlas.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct SfunArgs {
    /// Chart: case1-010, case1-001, case2-zu, case2-yv, case1p, case2p or case3p.
    #[arg(long)]
    pub chart: String,
    /// First chart weight (positive)
    #[arg(long)]
    pub a: i64,
    /// Second chart weight (positive)
    #[arg(long)]
    pub b: i64,
    /// Coefficient of the boundary curve
    #[arg(long, default_value = "0")]
    pub c: String,
    /// Also print the piecewise-quadratic volume profile.
    #[arg(long)]
    pub profile: bool,
}

#[derive(Args, Debug)]
pub struct ZariskiArgs {
    /// f1, blp114, index3m, quotient-resolution, or a toric blowup such as `f1:w=2,1`.
    #[arg(long)]
    pub surface: String,
    /// Coordinates `1,1/2,0` in the model basis, or a combination `2*E + F` of named curves.
    #[arg(long, allow_hyphen_values = true)]
    pub divisor: String,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[arg(long)]
    pub surface: Surface,
    /// Equation such as `x^3*z^3 + x*y^5`, or a file holding one (text or curve JSON).
    #[arg(long)]
    pub curve: String,
}

#[derive(Args, Debug)]
pub struct BetaArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// One-parameter subgroup weights `l1,l2,l3` on `x, y, z`.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "divisor",
        required_unless_present = "divisor"
    )]
    pub weights: Option<String>,
    /// An invariant curve, for instance `E` or `L_y`.
    #[arg(long)]
    pub divisor: Option<String>,
    #[arg(long)]
    pub c: String,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Cross-check every chart weight with `a + b` up to this bound.
    #[arg(long)]
    pub bound: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum HklCmd {
    /// Images `s(c)` of the atlas walls against the predicted values `1/n`.
    Map {
        /// Also map walls found by the engine but absent from the atlas.
        #[arg(long)]
        engine: bool,
    },
    /// Cone-construction thresholds `(4c+1)/3` against the printed families.
    Cone,
    /// Dimension count `dim E- + dim E+ = 17 + dim Z` per atlas row.
    Audit,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// Write the atlas as JSON to FILE, or to standard output.
    #[arg(long, conflicts_with = "check", required_unless_present = "check")]
    pub emit: bool,
    /// Read an atlas from FILE (or standard input), recompute every row and
    /// compare it with the reference atlas.
    #[arg(long)]
    pub check: bool,
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CertifyCmd {
    /// The exceptional curve over the index-3 point.
    Index3 {
        #[arg(long)]
        c: String,
    },
    /// The (-4)-curve over the 1/4(1,1) point of BlP114.
    QuotientPoint {
        #[arg(long)]
        c: String,
        #[arg(long, default_value = "z^2*x^4")]
        curve: String,
    },
    /// Lower bound for the first wall.
    FirstWall,
}

struct Ctx<'a> {
    g: &'a Global,
}

impl Ctx<'_> {
    /// Column names for an exact value, with its decimal companion when asked.
    fn cols(&self, name: &str) -> Vec<String> {
        let mut v = vec![name.to_string()];
        if self.g.approx.is_some() {
            v.push(format!("{name}~"));
        }
        v
    }

    fn surd(&self, x: &SurdSum) -> Vec<String> {
        let mut v = vec![x.to_string()];
        if let Some(d) = self.g.approx {
            v.push(x.approx(d));
        }
        v
    }

    fn rat(&self, x: &Rational) -> Vec<String> {
        self.surd(&SurdSum::from_rational(x.clone()))
    }

    fn atlas(&self) -> Result<WallAtlas> {
        Ok(match &self.g.atlas {
            Some(p) => WallAtlas::from_path(p)?,
            None => WallAtlas::bundled(),
        })
    }
}

fn header(parts: &[Vec<String>]) -> Vec<String> {
    parts.concat()
}

fn s(x: impl ToString) -> Vec<String> {
    vec![x.to_string()]
}

fn parse_c(text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| anyhow!("--c {text}: {e}"))
}

fn read_curve(arg: &CurveArgs) -> Result<CurvePair> {
    let text = if Path::new(&arg.curve).is_file() {
        std::fs::read_to_string(&arg.curve).with_context(|| format!("reading {}", arg.curve))?
    } else {
        arg.curve.clone()
    };
    let text = text.trim();
    let curve = if text.starts_with('{') {
        let j: CurveJson = serde_json::from_str(text).context("curve JSON")?;
        if j.surface != arg.surface {
            bail!("curve JSON is on {}, not {}", j.surface, arg.surface);
        }
        CurvePair::from_json(&j)?
    } else {
        parse_curve(text, arg.surface)?
    };
    for w in &curve.warnings {
        eprintln!("warning: {w}");
    }
    Ok(curve)
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn weight_text(l: [i64; 3]) -> String {
    format!("({},{},{})", l[0], l[1], l[2])
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let ctx = Ctx { g: &cli.global };
    let (report, outcome) = match &cli.command {
        Cmd::Walls(a) => walls(&ctx, a)?,
        Cmd::Sfun(a) => sfun(&ctx, a)?,
        Cmd::Zariski(a) => zariski(a)?,
        Cmd::Beta(a) => beta_cmd(&ctx, a)?,
        Cmd::Threshold(a) => threshold_cmd(a)?,
        Cmd::Hkl(h) => hkl(&ctx, h)?,
        Cmd::Tables(a) => return tables(&ctx, a, out),
        Cmd::Certify(c) => certify(&ctx, c)?,
    };
    report.write(cli.global.format, out)?;
    Ok(outcome)
}

type Res = Result<(Report, Outcome)>;

fn walls(ctx: &Ctx, a: &WallsArgs) -> Res {
    let atlas = ctx.atlas()?;
    let mut t = Table::new(
        "walls",
        header(&[
            ctx.cols("wall"),
            s("surface"),
            s("status"),
            s("centers"),
            s("curve"),
            s("weight"),
            s("valuation"),
            s("m"),
        ]),
    );
    let mut rows: Vec<(Rational, Surface, Vec<String>)> = Vec::new();
    let mut diffs = Vec::new();
    for surf in a.surface.surfaces() {
        let found = enumerate_walls(surf)?;
        let published: BTreeSet<Rational> = atlas.wall_values(surf)?.into_iter().collect();
        let values: BTreeSet<Rational> = found.iter().map(|c| c.wall.clone()).collect();
        let status = |w: &Rational| {
            if published.contains(w) {
                "published"
            } else {
                "engine-only"
            }
        };
        let row = |c: &WallCandidate, n: usize| {
            header(&[
                ctx.rat(&c.wall),
                s(surf),
                s(status(&c.wall)),
                s(n),
                s(&c.curve),
                s(weight_text(c.lambda)),
                s(c.label()),
                s(&c.m),
            ])
        };
        if a.centers {
            for c in &found {
                rows.push((c.wall.clone(), surf, row(c, 1)));
            }
        } else {
            for w in &values {
                let group: Vec<&WallCandidate> = found.iter().filter(|c| &c.wall == w).collect();
                rows.push((w.clone(), surf, row(group[0], group.len())));
            }
        }
        for w in published.difference(&values) {
            diffs.push(format!("{surf}: atlas wall {w} not found"));
            let mut r = header(&[ctx.rat(w), s(surf), s("missing")]);
            r.resize(t.columns.len(), "-".into());
            rows.push((w.clone(), surf, r));
        }
        for w in values.difference(&published) {
            diffs.push(format!("{surf}: wall {w} is not in the atlas"));
        }
    }
    rows.sort_by(|x, y| (&x.0, x.1).cmp(&(&y.0, y.1)));
    for (_, _, r) in rows {
        t.push(r);
    }
    let outcome = if a.check && !diffs.is_empty() {
        for d in &diffs {
            eprintln!("{d}");
        }
        Outcome::CheckFailed
    } else {
        Outcome::Ok
    };
    Ok((Report::single(t), outcome))
}

fn sfun(ctx: &Ctx, a: &SfunArgs) -> Res {
    let tag: ChartTag = a.chart.parse()?;
    let ch = ChartCase::new(tag, a.a, a.b)?;
    let c = parse_c(&a.c)?;
    let cmp = compare_s(&ch, &c)?;
    let mut t = Table::new(
        "s",
        header(&[
            s("chart"),
            s("a"),
            s("b"),
            s("c"),
            s("branch"),
            ctx.cols("engine"),
            ctx.cols("formula"),
            s("agree"),
        ]),
    );
    t.push(header(&[
        s(tag.slug()),
        s(a.a),
        s(a.b),
        s(&c),
        s(cmp.branch),
        ctx.surd(&cmp.engine),
        ctx.surd(&cmp.formula),
        s(yes(cmp.agrees())),
    ]));
    let mut rep = Report::single(t);
    if tag == ChartTag::Case1p {
        let r = resolve_case1p(a.a, a.b)?;
        let mut t = Table::new("case1p-ordering", ["a", "b", "engine", "matches"]);
        t.push(vec![
            a.a.to_string(),
            a.b.to_string(),
            r.engine.to_string(),
            r.matches.into(),
        ]);
        rep.tables.push(t);
    }
    if a.profile {
        let p = chart_profile(&ch)?.report(&c);
        let mut t = Table::new("profile", ["from", "to", "t^2", "t", "1"]);
        for seg in &p.segments {
            let [c2, c1, c0] = seg.poly.clone();
            t.push(vec![seg.from.clone(), seg.to.clone(), c2, c1, c0]);
        }
        rep.tables.push(t);
        let mut t = Table::new("profile-summary", ["tau", "raw_integral", "s_at_c"]);
        t.push(vec![p.tau, p.raw_integral, p.s_at_c]);
        rep.tables.push(t);
    }
    Ok((rep, Outcome::Ok))
}

fn parse_divisor(model: &SurfaceModel, text: &str) -> Result<DivisorClass> {
    let text = text.trim();
    if !text.chars().any(|ch| ch.is_ascii_alphabetic()) {
        let v = text
            .split(',')
            .map(|x| parse_rational(x.trim()).map_err(|e| anyhow!("divisor coordinate {x}: {e}")))
            .collect::<Result<Vec<_>>>()?;
        if v.len() != model.rank() {
            bail!(
                "divisor has {} coordinates, {} has rank {}",
                v.len(),
                model.name,
                model.rank()
            );
        }
        return Ok(DivisorClass(v));
    }
    let mut terms = Vec::new();
    let signed = text.replace('-', "+-");
    for term in signed.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (neg, term) = match term.strip_prefix('-') {
            Some(t) => (true, t.trim()),
            None => (false, term),
        };
        let (coef, label) = match term.rsplit_once('*') {
            Some((c, l)) => (
                parse_rational(c.trim()).map_err(|e| anyhow!("coefficient {c}: {e}"))?,
                l.trim(),
            ),
            None => (Rational::from_integer(1.into()), term),
        };
        terms.push((label, if neg { -coef } else { coef }));
    }
    model.combination(&terms).map_err(|e| {
        let known: Vec<&str> = model.named.iter().map(|(l, _)| l.as_str()).collect();
        anyhow!("{e}; curves of {}: {}", model.name, known.join(", "))
    })
}

fn zariski(a: &ZariskiArgs) -> Res {
    let model = builtin_surface(&a.surface)?;
    let d = parse_divisor(&model, &a.divisor)?;
    let mut t = Table::new(
        "zariski",
        [
            "surface",
            "basis",
            "divisor",
            "pseudoeffective",
            "nef",
            "positive",
            "negative",
            "volume",
        ],
    );
    let pseff = model.is_pseudoeffective(&d);
    let (pos, neg, vol) = if pseff {
        let z = zariski_decompose(&model, &d)?;
        let neg: Vec<String> = z
            .negative_support
            .iter()
            .map(|(i, c)| format!("{c}*{}", model.generator_labels[*i]))
            .collect();
        let neg = if neg.is_empty() {
            "0".into()
        } else {
            neg.join(" + ")
        };
        (z.positive.to_string(), neg, z.volume(&model).to_string())
    } else {
        ("-".into(), "-".into(), "0".into())
    };
    t.push(vec![
        model.name.clone(),
        model.basis.join(","),
        d.to_string(),
        yes(pseff),
        yes(model.is_nef(&d)),
        pos,
        neg,
        vol,
    ]);
    Ok((Report::single(t), Outcome::Ok))
}

fn parse_weights(text: &str) -> Result<[i64; 3]> {
    let v: Vec<i64> = text
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|e| anyhow!("weight {x}: {e}"))
        })
        .collect::<Result<_>>()?;
    v.try_into()
        .map_err(|_| anyhow!("--weights takes three integers l1,l2,l3"))
}

fn beta_table(ctx: &Ctx, name: &str, reports: &[&BetaReport]) -> Table {
    let mut t = Table::new(
        name,
        header(&[
            s("valuation"),
            s("A"),
            ctx.cols("S"),
            ctx.cols("beta"),
            s("verdict"),
        ]),
    );
    for r in reports {
        let verdict = match r.verdict {
            Verdict::Destabilizing => "destabilizing",
            Verdict::Critical => "critical",
            Verdict::Positive => "positive",
        };
        t.push(header(&[
            s(&r.valuation),
            s(&r.a),
            ctx.surd(&r.s),
            ctx.surd(&r.beta),
            s(verdict),
        ]));
    }
    t
}

fn beta_cmd(ctx: &Ctx, a: &BetaArgs) -> Res {
    let curve = read_curve(&a.curve)?;
    let c = parse_c(&a.c)?;
    let v = match (&a.weights, &a.divisor) {
        (Some(w), _) => Valuation::Vector(one_ps_vector(parse_weights(w)?, curve.surface)?),
        (None, Some(d)) => Valuation::Divisor(d.clone()),
        (None, None) => bail!("give --weights or --divisor"),
    };
    let r = beta(&curve, &v, &c)?;
    Ok((Report::single(beta_table(ctx, "beta", &[&r])), Outcome::Ok))
}

fn threshold_cmd(a: &ThresholdArgs) -> Res {
    let curve = read_curve(&a.curve)?;
    let t = threshold(&curve, a.bound)?;
    let mut tab = Table::new(
        "threshold",
        [
            "curve",
            "class",
            "threshold",
            "lower",
            "lower_binding",
            "upper",
            "upper_binding",
            "contradiction",
            "checked",
            "grid_bound",
            "grid_consistent",
        ],
    );
    let binding = |b: &Option<kwall_core::stability::Bound>| {
        b.as_ref().map_or("-".into(), |b| b.binding.join(" "))
    };
    let class = match t.classification {
        kwall_core::stability::ThresholdClass::Empty => "empty",
        kwall_core::stability::ThresholdClass::Point => "point",
        kwall_core::stability::ThresholdClass::Interval => "interval",
    };
    tab.push(vec![
        curve.to_string(),
        class.into(),
        t.to_string(),
        t.lower_text(),
        binding(&t.lower),
        t.upper_text(),
        binding(&t.upper),
        t.contradiction.clone().unwrap_or_else(|| "-".into()),
        t.checked.to_string(),
        t.grid_bound.map_or("-".into(), |b| b.to_string()),
        yes(t.grid_consistent),
    ]);
    let outcome = if t.grid_consistent {
        Outcome::Ok
    } else {
        Outcome::CheckFailed
    };
    Ok((Report::single(tab), outcome))
}

fn set_text(xs: impl IntoIterator<Item = Rational>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn hkl(ctx: &Ctx, cmd: &HklCmd) -> Res {
    let atlas = ctx.atlas()?;
    match cmd {
        HklCmd::Map { engine } => {
            let r = map_walls(&atlas)?;
            let predicted: BTreeSet<Rational> = PREDICTED_N
                .iter()
                .map(|n| Rational::new(1.into(), (*n).into()))
                .collect();
            let is_pred = |v: &HklValue| match v {
                HklValue::Finite(x) => yes(predicted.contains(x)),
                HklValue::Pole => "pole".into(),
            };
            let mut t = Table::new(
                "images",
                header(&[s("wall"), s("surface"), s("family"), s("s"), s("predicted")]),
            );
            for row in &r.rows {
                t.push(vec![
                    row.wall.to_string(),
                    row.surface.to_string(),
                    row.family.unwrap_or("-").into(),
                    row.s.to_string(),
                    is_pred(&row.s),
                ]);
            }
            let mut sum = Table::new("summary", ["item", "value", "agrees"]);
            sum.push(vec![
                "hyperelliptic images".into(),
                set_text(r.hyperelliptic.clone()),
                "-".into(),
            ]);
            sum.push(vec![
                "unigonal images".into(),
                set_text(r.unigonal.clone()),
                "-".into(),
            ]);
            sum.push(vec!["poles".into(), set_text(r.poles.clone()), "-".into()]);
            sum.push(vec![
                "missing".into(),
                set_text(r.missing.clone()),
                yes(r.missing.is_empty()),
            ]);
            sum.push(vec![
                "unexpected".into(),
                set_text(r.unexpected.clone()),
                yes(r.unexpected.is_empty()),
            ]);
            for f in &r.families {
                sum.push(vec![
                    format!("family {}", f.family),
                    format!(
                        "{} vs {}",
                        set_text(f.computed.clone()),
                        set_text(f.predicted.clone())
                    ),
                    yes(f.agrees()),
                ]);
            }
            let mut rep = Report {
                tables: vec![t, sum],
            };
            if *engine {
                let mut t = Table::new(
                    "engine-only",
                    header(&[s("wall"), s("surface"), s("s"), s("predicted")]),
                );
                for surf in Surface::ALL {
                    let known: BTreeSet<Rational> = atlas.wall_values(surf)?.into_iter().collect();
                    let found: BTreeSet<Rational> =
                        enumerate_walls(surf)?.into_iter().map(|c| c.wall).collect();
                    for w in found.difference(&known) {
                        let v = hkl_param(w);
                        t.push(vec![
                            w.to_string(),
                            surf.to_string(),
                            v.to_string(),
                            is_pred(&v),
                        ]);
                    }
                }
                rep.tables.push(t);
            }
            let outcome = if r.ok() {
                Outcome::Ok
            } else {
                Outcome::CheckFailed
            };
            Ok((rep, outcome))
        }
        HklCmd::Cone => {
            let rows = cone_report(&atlas)?;
            let mut t = Table::new(
                "cone",
                ["wall", "surface", "image", "family", "listed", "note"],
            );
            for r in rows {
                t.push(vec![
                    r.wall,
                    r.surface.to_string(),
                    r.image,
                    r.family.unwrap_or_else(|| "-".into()),
                    yes(r.listed),
                    r.note.unwrap_or_default(),
                ]);
            }
            Ok((Report::single(t), Outcome::Ok))
        }
        HklCmd::Audit => {
            let r = audit_dim_formula(&atlas);
            let mut t = Table::new(
                "audit",
                [
                    "wall", "surface", "branch", "e_minus", "e_plus", "dim_z", "residual",
                    "verified",
                ],
            );
            for x in &r.rows {
                t.push(vec![
                    x.wall.clone(),
                    x.surface.to_string(),
                    x.branch.clone(),
                    x.e_minus.to_string(),
                    x.e_plus.to_string(),
                    x.center_dim.to_string(),
                    x.residual.to_string(),
                    yes(x.verified),
                ]);
            }
            for x in r.anomalies() {
                eprintln!(
                    "note: {} {} on {} has residual {}",
                    x.wall, x.branch, x.surface, x.residual
                );
            }
            let outcome = if r.verified_ok() {
                Outcome::Ok
            } else {
                Outcome::CheckFailed
            };
            Ok((Report::single(t), outcome))
        }
    }
}

fn tables(ctx: &Ctx, a: &TablesArgs, out: &mut dyn Write) -> Result<Outcome> {
    let reference = ctx.atlas()?;
    if a.emit {
        let text = reference.to_json();
        match &a.file {
            Some(p) => std::fs::write(p, text + "\n")
                .with_context(|| format!("writing {}", p.display()))?,
            None => writeln!(out, "{text}")?,
        }
        return Ok(Outcome::Ok);
    }
    let text = match &a.file {
        Some(p) => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            s
        }
    };
    let input = WallAtlas::from_json(&text)?;
    let mut diffs = Vec::new();
    let mut t = Table::new(
        "rows",
        [
            "wall",
            "surface",
            "curve",
            "weight",
            "singularity",
            "e_minus",
            "e_plus",
            "method",
            "chart",
            "m",
            "computed",
            "reproduced",
            "in_reference",
        ]
        .map(String::from)
        .to_vec(),
    );
    for row in &input.walls {
        let chk = reproduce_row(row)?;
        let in_ref = reference.walls.contains(row);
        if !chk.ok() {
            diffs.push(format!(
                "{} {}: recomputed {:?}",
                row.wall,
                row.label,
                chk.computed().map(|x| x.to_string())
            ));
        }
        if !in_ref {
            diffs.push(format!(
                "{} {}: row differs from the reference atlas",
                row.wall, row.label
            ));
        }
        let method = match chk.method {
            kwall_core::hkl::RowMethod::Formula => "formula",
            kwall_core::hkl::RowMethod::Engine => "engine",
            kwall_core::hkl::RowMethod::Threshold => "threshold",
        };
        t.push(vec![
            row.wall.clone(),
            row.surface.to_string(),
            row.label.clone(),
            weight_text(row.weight),
            row.singularity.clone(),
            row.e_minus.map_or("-".into(), |d| d.to_string()),
            row.e_plus
                .as_ref()
                .map_or("-".into(), |e| format!("{} ({})", e.label, e.dim)),
            method.into(),
            chk.chart.clone().unwrap_or_else(|| "-".into()),
            chk.m.map_or("-".into(), |m| m.to_string()),
            chk.computed().map_or("-".into(), |x| x.to_string()),
            yes(chk.ok()),
            yes(in_ref),
        ]);
    }
    for row in &reference.walls {
        if !input.walls.contains(row) {
            diffs.push(format!(
                "{} {}: missing from the input",
                row.wall, row.label
            ));
        }
    }
    Report::single(t).write(ctx.g.format, out)?;
    for d in &diffs {
        eprintln!("{d}");
    }
    Ok(if diffs.is_empty() {
        Outcome::Ok
    } else {
        Outcome::CheckFailed
    })
}

fn certify(ctx: &Ctx, cmd: &CertifyCmd) -> Res {
    match cmd {
        CertifyCmd::Index3 { c } => {
            let r = index3_certificate(&parse_c(c)?)?;
            let ok = r.verdict == Verdict::Destabilizing;
            Ok((
                Report::single(beta_table(ctx, "index3", &[&r])),
                if ok {
                    Outcome::Ok
                } else {
                    Outcome::CheckFailed
                },
            ))
        }
        CertifyCmd::QuotientPoint { c, curve } => {
            let cur = parse_curve(curve, Surface::BlP114)?;
            let r = quotient_point_certificate(&cur, &parse_c(c)?)?;
            let t = beta_table(ctx, "quotient-point", &[&r.engine, &r.printed]);
            Ok((
                Report::single(t),
                if r.destabilizing() {
                    Outcome::Ok
                } else {
                    Outcome::CheckFailed
                },
            ))
        }
        CertifyCmd::FirstWall => {
            let (b, (i0, j0)) = first_wall_bound();
            let mut t = Table::new("first-wall", header(&[ctx.cols("bound"), s("i0"), s("j0")]));
            t.push(header(&[ctx.rat(&b), s(i0), s(j0)]));
            Ok((Report::single(t), Outcome::Ok))
        }
    }
}
