//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Each export takes plain strings and returns a JSON document. The
//! `*_json` functions hold the logic so they can be tested natively.

use std::sync::Arc;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use subcomm::commutativity::{profile_collisions, sd, sd_profile, sd_rel_idx};
use subcomm::expr::GroupExpr;
use subcomm::select::select;
use subcomm::zm::{zm_sd_table_with, ZmRow};
use subcomm::{Fraction, Lattice};

/// Kept below the CLI default; enumeration runs on the page's main thread.
pub const WEB_MAX_ORDER: usize = 360;

fn lattice(expr: &str) -> Result<(GroupExpr, Lattice), String> {
    let e = GroupExpr::parse(expr).map_err(|e| e.to_string())?;
    let g = e.build(WEB_MAX_ORDER).map_err(|e| e.to_string())?;
    let lat = Lattice::enumerate(Arc::new(g));
    Ok((e, lat))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn gens(lat: &Lattice, i: usize) -> String {
    let g = lat.group();
    let names: Vec<&str> = g.generators_of(lat.subgroup(i).members()).iter().map(|&x| g.name(x)).collect();
    format!("<{}>", names.join(", "))
}

#[derive(Serialize)]
struct ClassOut {
    class: usize,
    order: usize,
    size: usize,
    generators: String,
    sd: Fraction,
    decimal: String,
}

#[derive(Serialize)]
struct Summary {
    group: String,
    order: usize,
    subgroups: usize,
    classes: Vec<ClassOut>,
    sd: Fraction,
    decimal: String,
    pair_count: u64,
    /// Values shared by non-conjugate classes.
    shared: Vec<(Fraction, Vec<usize>)>,
}

pub fn summary_json(expr: &str) -> Result<String, String> {
    let (_, lat) = lattice(expr)?;
    let r = sd(&lat);
    let prof = sd_profile(&lat);
    let shared = profile_collisions(&prof).into_iter().collect();
    let classes = prof
        .into_iter()
        .map(|p| ClassOut {
            class: p.class,
            order: p.order,
            size: p.class_size,
            generators: gens(&lat, p.representative),
            decimal: p.value.to_decimal(6),
            sd: p.value,
        })
        .collect();
    Ok(to_json(&Summary {
        group: lat.group().label().to_string(),
        order: lat.group().order(),
        subgroups: lat.len(),
        classes,
        decimal: r.value.to_decimal(6),
        sd: r.value,
        pair_count: r.pair_count,
        shared,
    }))
}

#[derive(Serialize)]
struct RelOut {
    group: String,
    subgroup: usize,
    order: usize,
    generators: String,
    sd: Fraction,
    decimal: String,
    pair_count: u64,
    lattice_sizes: (usize, usize),
}

pub fn sd_rel_json(expr: &str, selector: &str) -> Result<String, String> {
    let (_, lat) = lattice(expr)?;
    let h = select(&lat, selector).map_err(|e| e.to_string())?;
    let r = sd_rel_idx(&lat, h);
    Ok(to_json(&RelOut {
        group: lat.group().label().to_string(),
        subgroup: h,
        order: lat.subgroup(h).size(),
        generators: gens(&lat, h),
        decimal: r.value.to_decimal(6),
        sd: r.value,
        pair_count: r.pair_count,
        lattice_sizes: r.lattice_sizes,
    }))
}

pub fn zm_table_json(expr: &str) -> Result<String, String> {
    let (e, lat) = lattice(expr)?;
    let GroupExpr::Zm(p) = e else {
        return Err(format!("{e} is not a ZM(m,n,r) group"));
    };
    let rows: Vec<ZmRow> = zm_sd_table_with(&lat, &p).map_err(|e| e.to_string())?;
    Ok(to_json(&rows))
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// Lattice size, sd(G) and the per-class relative degrees.
#[wasm_bindgen]
pub fn summary(expr: &str) -> Result<String, JsValue> {
    js(summary_json(expr))
}

/// sd(H, G) for a subgroup selector.
#[wasm_bindgen]
pub fn sd_rel(expr: &str, selector: &str) -> Result<String, JsValue> {
    js(sd_rel_json(expr, selector))
}

/// The triple-indexed subgroup table of a ZM group.
#[wasm_bindgen]
pub fn zm_table(expr: &str) -> Result<String, JsValue> {
    js(zm_table_json(expr))
}
