use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use subcomm::cache::{CacheStatus, LatticeCache};
use subcomm::commutativity::{
    d_group, d_rel, hypothesis_holds, maximal_terms, profile_collisions, sd, sd_nary, sd_pair_idx, sd_profile,
    sd_rel_idx, sd_via_maximal, sd_via_maximal_simplified, MaximalFormula, MaximalTerm, ProfileEntry,
};
use subcomm::expr::GroupExpr;
use subcomm::oracle::oracle_subgroup_sets;
use subcomm::parallel::map_ordered;
use subcomm::report::{dihedral_sweep, maximal_report, DihedralRow, MaximalReport};
use subcomm::select::select;
use subcomm::verify::{default_corpus, load_corpus, run_verify, Suite, VerifyOptions};
use subcomm::zm::{valid_params_up_to, zm_sd_table_with, ZmParams, ZmRow, SWEEP_CSV_HEADER};
use subcomm::{Error, Fraction, Lattice};

use crate::render::{emit, Table};
use crate::{Cli, Command, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::OrderCap { .. } | Error::OracleBound { .. } | Error::IsoBound { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.to_string() }
    }
}

type Res<T> = Result<T, CliError>;

const DECIMAL_DIGITS: usize = 10;

struct Ctx<'a> {
    cli: &'a Cli,
    cache: Option<LatticeCache>,
}

impl Ctx<'_> {
    fn log(&self, msg: impl FnOnce() -> String) {
        if self.cli.verbose {
            eprintln!("{}", msg());
        }
    }

    fn lattice(&self, text: &str) -> Res<Lattice> {
        let expr = GroupExpr::parse(text)?;
        let g = Arc::new(expr.build(self.cli.max_order)?);
        let t = Instant::now();
        let lat = match &self.cache {
            Some(c) => {
                let (lat, status) = c.get_or_enumerate(g.clone());
                self.log(|| match status {
                    CacheStatus::Hit => format!("cache hit: {}", c.path_for(&g).display()),
                    CacheStatus::Miss => format!("cache miss: wrote {}", c.path_for(&g).display()),
                    CacheStatus::Rejected(why) => format!("cache rejected ({why}); recomputed"),
                });
                lat
            }
            None => Lattice::enumerate(g.clone()),
        };
        self.log(|| format!("{}: {} subgroups in {:.1?}", g.label(), lat.len(), t.elapsed()));
        if self.cli.oracle {
            let sets = oracle_subgroup_sets(&g)?;
            let same = sets.len() == lat.len() && lat.subgroups().iter().all(|h| sets.contains(h.members()));
            if !same {
                return Err(CliError {
                    code: EXIT_VIOLATION,
                    message: format!(
                        "lattice of {} disagrees with brute force: {} vs {} subgroups",
                        g.label(),
                        lat.len(),
                        sets.len()
                    ),
                });
            }
            self.log(|| format!("oracle agrees: {} subgroups", sets.len()));
        }
        Ok(lat)
    }
}

pub fn run(cli: &Cli) -> Res<u8> {
    let ctx = Ctx { cli, cache: cli.cache.as_ref().map(LatticeCache::new) };
    let f = cli.format;
    match &cli.command {
        Command::Sd { group, breakdown } => {
            let lat = ctx.lattice(group)?;
            let top = lat.top_index();
            sd_doc(f, &lat, "sd", &[top], rel_breakdown(&lat, top, *breakdown), |l| sd(l).pair_count)
        }
        Command::SdRel { group, subgroup, breakdown } => {
            let lat = ctx.lattice(group)?;
            let h = select(&lat, subgroup)?;
            sd_doc(f, &lat, "sd-rel", &[h], rel_breakdown(&lat, h, *breakdown), |l| sd_rel_idx(l, h).pair_count)
        }
        Command::SdPair { group, h, k } => {
            let lat = ctx.lattice(group)?;
            let (h, k) = (select(&lat, h)?, select(&lat, k)?);
            sd_doc(f, &lat, "sd-pair", &[h, k], None, |l| sd_pair_idx(l, h, k).pair_count)
        }
        Command::SdNary { group, subgroups } => {
            let lat = ctx.lattice(group)?;
            let idx: Vec<usize> = subgroups.iter().map(|s| select(&lat, s)).collect::<Result<_, _>>()?;
            let sets: Vec<_> = idx.iter().map(|&i| lat.subgroup(i).clone()).collect();
            let r = sd_nary(&lat, &sets)?;
            sd_doc(f, &lat, "sd-nary", &idx, None, |_| r.pair_count)
        }
        Command::D { group, subgroup } => d_cmd(&ctx, group, subgroup.as_deref()),
        Command::Lattice { group } => lattice_cmd(&ctx, group),
        Command::Maximal { group } => maximal_cmd(&ctx, group),
        Command::Verify { groups, suites } => verify_cmd(&ctx, groups, suites),
        Command::ZmSweep { groups, max_mn } => zm_cmd(&ctx, groups, *max_mn),
        Command::Example26 { group } => example_cmd(&ctx, group),
        Command::Profile { group, dihedral_sweep } => match (group, dihedral_sweep) {
            (_, Some(n)) => dihedral_cmd(&ctx, *n),
            (Some(g), None) => profile_cmd(&ctx, g),
            (None, None) => unreachable!("clap requires one"),
        },
    }
}

fn decimal(v: &Fraction) -> String {
    v.to_decimal(DECIMAL_DIGITS)
}

#[derive(Serialize)]
struct SubgroupRef {
    index: usize,
    order: usize,
    class: usize,
    generators: Vec<String>,
}

fn subgroup_ref(lat: &Lattice, i: usize) -> SubgroupRef {
    let g = lat.group();
    SubgroupRef {
        index: i,
        order: lat.subgroup(i).size(),
        class: lat.class_of(i),
        generators: g.generators_of(lat.subgroup(i).members()).iter().map(|&x| g.name(x).to_string()).collect(),
    }
}

fn gens_text(r: &SubgroupRef) -> String {
    format!("<{}>", r.generators.join(", "))
}

#[derive(Serialize)]
struct BreakdownRow {
    subgroup: usize,
    commuting: usize,
}

#[derive(Serialize)]
struct SdDoc {
    schema: &'static str,
    kind: &'static str,
    group: String,
    group_order: usize,
    lattice_size: usize,
    subgroups: Vec<SubgroupRef>,
    value: Fraction,
    decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair_count: Option<u64>,
    /// `|L(H_i)|` for each argument, then `|L(G)|` for `sd-rel`.
    lattice_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    breakdown: Option<Vec<BreakdownRow>>,
}

const SD_SCHEMA: &str = "subcomm.sd/1";

fn rel_breakdown(lat: &Lattice, h: usize, on: bool) -> Option<Vec<BreakdownRow>> {
    on.then(|| {
        let counts = lat.commuting_counts();
        lat.below(h).iter().map(|i| BreakdownRow { subgroup: i, commuting: counts[i] }).collect()
    })
}

fn sd_doc(
    f: Format,
    lat: &Lattice,
    kind: &'static str,
    args: &[usize],
    breakdown: Option<Vec<BreakdownRow>>,
    pairs: impl Fn(&Lattice) -> u64,
) -> Res<u8> {
    let mut sizes: Vec<usize> = args.iter().map(|&i| lat.sub_lattice_size(i)).collect();
    if kind == "sd-rel" || kind == "sd" {
        sizes = vec![sizes[0], lat.len()];
    }
    let p = pairs(lat);
    let value = Fraction::new(p, sizes.iter().product::<usize>() as u64);
    let g = lat.group();
    let doc = SdDoc {
        schema: SD_SCHEMA,
        kind,
        group: g.label().to_string(),
        group_order: g.order(),
        lattice_size: lat.len(),
        subgroups: args.iter().map(|&i| subgroup_ref(lat, i)).collect(),
        decimal: decimal(&value),
        value,
        pair_count: Some(p),
        lattice_sizes: sizes,
        breakdown,
    };
    print_sd(f, &doc);
    Ok(EXIT_OK)
}

fn print_sd(f: Format, doc: &SdDoc) {
    let args: Vec<String> = doc.subgroups.iter().map(|s| s.index.to_string()).collect();
    let mut t = Table::new(&["kind", "group", "subgroups", "value", "decimal", "pair_count", "lattice_sizes"]);
    let sizes: Vec<String> = doc.lattice_sizes.iter().map(usize::to_string).collect();
    t.push(vec![
        doc.kind.into(),
        doc.group.clone(),
        args.join(" "),
        doc.value.to_string(),
        doc.decimal.clone(),
        doc.pair_count.map(|p| p.to_string()).unwrap_or_default(),
        sizes.join("x"),
    ]);
    emit(f, doc, &t, || {
        let inner: Vec<String> = doc.subgroups.iter().map(gens_text).collect();
        let call = match doc.kind {
            "sd" => format!("sd({})", doc.group),
            "sd-rel" => format!("sd({}, {})", inner[0], doc.group),
            "d" => format!("d({})", doc.group),
            "d-rel" => format!("d({}, {})", inner[0], doc.group),
            _ => format!("sd({}) in {}", inner.join(", "), doc.group),
        };
        let mut s = format!("{call} = {} ≈ {}\n", doc.value, doc.decimal);
        if let Some(p) = doc.pair_count {
            s.push_str(&format!("{p} of {} tuples\n", doc.lattice_sizes.iter().product::<usize>()));
        }
        if let Some(b) = &doc.breakdown {
            let mut t = Table::new(&["subgroup", "|C(H1)|"]);
            for r in b {
                t.push(vec![r.subgroup.to_string(), r.commuting.to_string()]);
            }
            s.push_str(&t.to_text());
        }
        s
    });
}

fn d_cmd(ctx: &Ctx, group: &str, sub: Option<&str>) -> Res<u8> {
    let lat = ctx.lattice(group)?;
    let g = lat.group();
    let (kind, args, value) = match sub {
        None => ("d", vec![], d_group(g)),
        Some(s) => {
            let h = select(&lat, s)?;
            ("d-rel", vec![h], d_rel(g, lat.subgroup(h))?)
        }
    };
    let doc = SdDoc {
        schema: SD_SCHEMA,
        kind,
        group: g.label().to_string(),
        group_order: g.order(),
        lattice_size: lat.len(),
        subgroups: args.iter().map(|&i| subgroup_ref(&lat, i)).collect(),
        decimal: decimal(&value),
        value,
        pair_count: None,
        lattice_sizes: vec![],
        breakdown: None,
    };
    print_sd(ctx.cli.format, &doc);
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LatticeRow {
    index: usize,
    order: usize,
    class: usize,
    normal: bool,
    maximal: bool,
    generators: Vec<String>,
    bits: String,
}

#[derive(Serialize)]
struct LatticeDoc {
    schema: &'static str,
    group: String,
    order: usize,
    digest: String,
    classes: usize,
    subgroups: Vec<LatticeRow>,
}

fn lattice_cmd(ctx: &Ctx, group: &str) -> Res<u8> {
    let lat = ctx.lattice(group)?;
    let g = lat.group();
    let rows: Vec<LatticeRow> = (0..lat.len())
        .map(|i| {
            let r = subgroup_ref(&lat, i);
            LatticeRow {
                index: i,
                order: r.order,
                class: r.class,
                normal: lat.is_normal(i),
                maximal: lat.maximal_subgroups().contains(&i),
                generators: r.generators,
                bits: lat.subgroup(i).members().to_hex(),
            }
        })
        .collect();
    let mut t = Table::new(&["index", "order", "class", "normal", "maximal", "generators", "bits"]);
    for r in &rows {
        t.push(vec![
            r.index.to_string(),
            r.order.to_string(),
            r.class.to_string(),
            r.normal.to_string(),
            r.maximal.to_string(),
            r.generators.join(" "),
            r.bits.clone(),
        ]);
    }
    let doc = LatticeDoc {
        schema: "subcomm.lattice/1",
        group: g.label().to_string(),
        order: g.order(),
        digest: g.digest_hex(),
        classes: lat.conjugacy_classes().len(),
        subgroups: rows,
    };
    emit(ctx.cli.format, &doc, &t, || {
        let s = format!(
            "{}: order {}, {} subgroups in {} conjugacy classes\n",
            doc.group,
            doc.order,
            doc.subgroups.len(),
            doc.classes
        );
        let mut t2 = Table::new(&["index", "order", "class", "normal", "maximal", "generators"]);
        for r in &doc.subgroups {
            t2.push(vec![
                r.index.to_string(),
                r.order.to_string(),
                r.class.to_string(),
                if r.normal { "yes" } else { "" }.into(),
                if r.maximal { "yes" } else { "" }.into(),
                format!("<{}>", r.generators.join(", ")),
            ]);
        }
        s + &t2.to_text()
    });
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct MaximalDoc {
    schema: &'static str,
    group: String,
    lattice_size: usize,
    maximal: Vec<SubgroupRef>,
    terms: Vec<MaximalTerm>,
    sd: Fraction,
    sd_via_maximal: Fraction,
    identity_holds: bool,
    hypothesis_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    single_sum: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    double_sum: Option<Fraction>,
}

fn maximal_cmd(ctx: &Ctx, group: &str) -> Res<u8> {
    let lat = ctx.lattice(group)?;
    let direct = sd(&lat).value;
    let via = sd_via_maximal(&lat);
    let hyp = hypothesis_holds(&lat);
    let doc = MaximalDoc {
        schema: "subcomm.maximal/1",
        group: lat.group().label().to_string(),
        lattice_size: lat.len(),
        maximal: lat.maximal_subgroups().iter().map(|&i| subgroup_ref(&lat, i)).collect(),
        terms: maximal_terms(&lat),
        identity_holds: direct == via,
        sd: direct,
        sd_via_maximal: via,
        hypothesis_holds: hyp,
        single_sum: sd_via_maximal_simplified(&lat, MaximalFormula::SingleSum).ok(),
        double_sum: sd_via_maximal_simplified(&lat, MaximalFormula::DoubleSum).ok(),
    };
    let mut t = Table::new(&["subgroup", "order", "coefficient", "lattice_size", "sd_rel"]);
    for m in &doc.terms {
        t.push(vec![
            m.subgroup.to_string(),
            m.order.to_string(),
            m.coefficient.to_string(),
            m.lattice_size.to_string(),
            m.sd_rel.to_string(),
        ]);
    }
    emit(ctx.cli.format, &doc, &t, || {
        let mut s = format!("{}: {} maximal subgroups\n", doc.group, doc.maximal.len());
        for m in &doc.maximal {
            s.push_str(&format!("  #{} order {} {}\n", m.index, m.order, gens_text(m)));
        }
        s.push_str("intersections (signed family counts):\n");
        s.push_str(&t.to_text());
        s.push_str(&format!(
            "sd direct          {}\nsd via maximals    {}\nidentity holds     {}\nhypothesis holds   {}\n",
            doc.sd, doc.sd_via_maximal, doc.identity_holds, doc.hypothesis_holds
        ));
        if let (Some(a), Some(b)) = (&doc.single_sum, &doc.double_sum) {
            s.push_str(&format!("single sum         {a}\ndouble sum         {b}\n"));
        }
        s
    });
    Ok(if doc.identity_holds { EXIT_OK } else { EXIT_VIOLATION })
}

fn verify_cmd(ctx: &Ctx, groups: &[String], suite_names: &[String]) -> Res<u8> {
    let suites: Vec<Suite> = if suite_names.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suite_names
            .iter()
            .map(|n| {
                Suite::from_name(n.trim()).ok_or_else(|| CliError {
                    code: EXIT_USAGE,
                    message: format!("unknown suite {n:?}; suites are {}", Suite::ALL.map(Suite::name).join(", ")),
                })
            })
            .collect::<Res<_>>()?
    };
    let corpus = if groups.is_empty() {
        let (c, warnings) = load_corpus(&default_corpus());
        for w in warnings {
            eprintln!("warning: {w}");
        }
        c
    } else {
        groups.iter().map(|g| GroupExpr::parse(g)).collect::<Result<_, _>>()?
    };
    let opts = VerifyOptions { max_order: ctx.cli.max_order, jobs: ctx.cli.jobs, cache: ctx.cache.clone() };
    let report = run_verify(&corpus, &suites, &opts);
    let mut t = Table::new(&["group", "suite", "property", "checked", "failed", "passed", "skipped"]);
    for g in &report.groups {
        if let Some(e) = &g.error {
            t.push(vec![g.group.clone(), "".into(), "build".into(), "0".into(), "0".into(), "false".into(), e.clone()]);
        }
        for p in &g.results {
            t.push(vec![
                g.group.clone(),
                p.suite.name().into(),
                p.property.clone(),
                p.checked.to_string(),
                p.failed.to_string(),
                p.passed.to_string(),
                p.skipped.clone().unwrap_or_default(),
            ]);
        }
    }
    emit(ctx.cli.format, &report, &t, || {
        let mut s = String::new();
        for g in &report.groups {
            if let Some(e) = &g.error {
                s.push_str(&format!("{:<12} ERROR {e}\n", g.group));
                continue;
            }
            let bad: Vec<_> = g.results.iter().filter(|p| !p.passed).collect();
            let checks: u64 = g.results.iter().map(|p| p.checked).sum();
            if bad.is_empty() {
                s.push_str(&format!("{:<12} ok    {checks} checks\n", g.group));
            }
            for p in bad {
                s.push_str(&format!(
                    "{:<12} FAIL  {}/{}: {} of {}\n",
                    g.group,
                    p.suite.name(),
                    p.property,
                    p.failed,
                    p.checked
                ));
                for w in &p.failures {
                    s.push_str(&format!("               subgroups {:?}: {}\n", w.subgroups, w.detail));
                }
            }
        }
        s.push_str(&format!(
            "{} groups, {} checks, {} failures, {} errors\n",
            report.summary.groups, report.summary.checks, report.summary.failures, report.summary.errors
        ));
        s
    });
    Ok(if !report.all_passed() {
        EXIT_VIOLATION
    } else if report.any_cap_exceeded() {
        EXIT_CAP
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct ZmDoc {
    schema: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<ZmRow>,
}

fn zm_cmd(ctx: &Ctx, groups: &[String], max_mn: u64) -> Res<u8> {
    let params: Vec<ZmParams> = if groups.is_empty() {
        valid_params_up_to(max_mn)
    } else {
        groups
            .iter()
            .map(|g| match GroupExpr::parse(g)? {
                GroupExpr::Zm(p) => Ok(p),
                other => Err(CliError { code: EXIT_USAGE, message: format!("{other} is not a ZM(m,n,r) group") }),
            })
            .collect::<Res<_>>()?
    };
    if let Some(p) = params.iter().find(|p| p.order() > ctx.cli.max_order as u64) {
        return Err(Error::OrderCap { order: p.order() as usize, cap: ctx.cli.max_order }.into());
    }
    let tables = map_ordered(&params, ctx.cli.jobs, |p| -> Res<Vec<ZmRow>> {
        let lat = ctx.lattice(&p.to_string())?;
        Ok(zm_sd_table_with(&lat, p)?)
    });
    let mut rows = Vec::new();
    for t in tables {
        rows.extend(t?);
    }
    let columns: Vec<&'static str> = SWEEP_CSV_HEADER.split(',').collect();
    let mut t = Table::new(&columns);
    for r in &rows {
        t.push(r.csv_line().split(',').map(String::from).collect());
    }
    let doc = ZmDoc { schema: "subcomm.zm-sweep/1", columns, rows };
    emit(ctx.cli.format, &doc, &t, || t.to_text());
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ExampleDoc<'a> {
    schema: &'static str,
    #[serde(flatten)]
    report: &'a MaximalReport,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

fn example_cmd(ctx: &Ctx, group: &str) -> Res<u8> {
    let lat = ctx.lattice(group)?;
    let r = maximal_report(&lat)?;
    let mut t =
        Table::new(&["type", "class", "class_size", "order", "normal", "intersection", "computed", "printed", "match"]);
    for c in &r.classes {
        t.push(vec![
            c.iso_type.clone(),
            c.class.to_string(),
            c.class_size.to_string(),
            c.order.to_string(),
            c.normal.to_string(),
            c.is_intersection.to_string(),
            c.computed.to_string(),
            opt(&c.printed),
            opt(&c.matches),
        ]);
    }
    let doc = ExampleDoc { schema: "subcomm.example/1", report: &r };
    emit(ctx.cli.format, &doc, &t, || {
        let mut s = format!(
            "{}: {} subgroups, {} maximal subgroups\n\nrelative degrees by conjugacy class\n",
            r.group, r.lattice_size, r.maximal_subgroups
        );
        s.push_str(&t.to_text());
        s.push_str("\ngrouped coefficients\n");
        let mut c = Table::new(&["type", "computed", "printed", "match"]);
        for row in &r.coefficients {
            c.push(vec![row.iso_type.clone(), row.computed.to_string(), opt(&row.printed), opt(&row.matches)]);
        }
        s.push_str(&c.to_text());
        s.push_str(&format!(
            "\nsd direct                {}\nsd via maximals          {}\nidentity holds           {}\n",
            r.sd_direct, r.sd_via_maximal, r.identity_holds
        ));
        if r.compared {
            s.push_str(&format!(
                "printed sd               {}\nprinted sd matches       {}\nprinted formula value    {}\n\
                 integrality flag         {} (printed sd * |L(G)|^2 is {}an integer)\n",
                opt(&r.printed_sd),
                opt(&r.printed_sd_matches),
                opt(&r.printed_formula_value),
                opt(&r.integrality_flag),
                if r.integrality_flag == Some(true) { "not " } else { "" }
            ));
        }
        s.push_str(&format!("all computed integral    {}\n", r.all_computed_integral));
        s
    });
    Ok(if r.identity_holds { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Serialize)]
struct ProfileRow {
    #[serde(flatten)]
    entry: ProfileEntry,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct Collision {
    value: Fraction,
    classes: Vec<usize>,
}

#[derive(Serialize)]
struct ProfileDoc {
    schema: &'static str,
    group: String,
    classes: Vec<ProfileRow>,
    /// Distinct conjugacy classes with the same relative degree.
    collisions: Vec<Collision>,
    consistent: bool,
}

fn profile_cmd(ctx: &Ctx, group: &str) -> Res<u8> {
    let lat = ctx.lattice(group)?;
    let prof = sd_profile(&lat);
    let collisions =
        profile_collisions(&prof).into_iter().map(|(value, classes)| Collision { value, classes }).collect();
    let classes: Vec<ProfileRow> = prof
        .into_iter()
        .map(|e| ProfileRow { generators: subgroup_ref(&lat, e.representative).generators, entry: e })
        .collect();
    let doc = ProfileDoc {
        schema: "subcomm.profile/1",
        group: lat.group().label().to_string(),
        consistent: classes.iter().all(|c| c.entry.consistent),
        classes,
        collisions,
    };
    let mut t = Table::new(&["class", "representative", "order", "class_size", "value", "consistent", "generators"]);
    for c in &doc.classes {
        t.push(vec![
            c.entry.class.to_string(),
            c.entry.representative.to_string(),
            c.entry.order.to_string(),
            c.entry.class_size.to_string(),
            c.entry.value.to_string(),
            c.entry.consistent.to_string(),
            c.generators.join(" "),
        ]);
    }
    emit(ctx.cli.format, &doc, &t, || {
        let mut s = t.to_text();
        for c in &doc.collisions {
            s.push_str(&format!("classes {:?} share sd = {}\n", c.classes, c.value));
        }
        s
    });
    Ok(if doc.consistent { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Serialize)]
struct DihedralDoc {
    schema: &'static str,
    rows: Vec<DihedralRow>,
}

fn dihedral_cmd(ctx: &Ctx, max: usize) -> Res<u8> {
    if max > ctx.cli.max_order {
        return Err(Error::OrderCap { order: max, cap: ctx.cli.max_order }.into());
    }
    let orders: Vec<usize> = (4..=max).step_by(2).collect();
    let rows: Vec<DihedralRow> = map_ordered(&orders, ctx.cli.jobs, |&o| dihedral_sweep([o]))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut t = Table::new(&["order", "sd_y", "sd_xy", "conjugate", "equal", "both_9/10"]);
    for r in &rows {
        t.push(vec![
            r.order.to_string(),
            r.sd_y.to_string(),
            r.sd_xy.to_string(),
            r.conjugate.to_string(),
            r.equal.to_string(),
            r.both_nine_tenths.to_string(),
        ]);
    }
    let doc = DihedralDoc { schema: "subcomm.dihedral-sweep/1", rows };
    emit(ctx.cli.format, &doc, &t, || t.to_text());
    Ok(EXIT_OK)
}
