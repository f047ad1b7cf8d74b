//! wasm-bindgen entry points for the browser demo. Each returns a JSON string;
//! failures come back as `{"error": ..., "exit_code": ...}`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use sympres::arrangement::format::parse_arrangement;
use sympres::arrangement::LatticeOptions;
use sympres::catalog::catalog;
use sympres::counting::{
    count_resolutions, wreath_count_closed_form, wreath_count_direct, wreath_weyl_data,
};
use sympres::report::ArrangementReport;
use sympres::roots::{CatalanSpec, DynkinType, WeylTypeData};
use sympres::{Error, IntersectionLattice};

/// Flat cap for the browser, well below the CLI default.
pub const WEB_MAX_FLATS: usize = 50_000;

/// Larger Catalan arrangements skip the lattice route in `wreath`.
pub const WEB_MAX_DIRECT_HYPERPLANES: usize = 40;

fn opts() -> LatticeOptions {
    LatticeOptions {
        max_flats: WEB_MAX_FLATS,
    }
}

#[derive(Serialize)]
struct Failure {
    error: String,
    exit_code: i32,
}

fn respond<T: Serialize>(r: Result<T, Error>) -> String {
    let out = match r {
        Ok(v) => serde_json::to_string(&v),
        Err(e) => serde_json::to_string(&Failure {
            error: e.to_string(),
            exit_code: e.exit_code(),
        }),
    };
    out.expect("serializable")
}

/// Lattice report for an arrangement in the text format.
#[wasm_bindgen]
pub fn analyze_arrangement(text: &str) -> String {
    respond(parse_arrangement(text).and_then(|a| {
        let l = IntersectionLattice::build(&a, &opts())?;
        Ok(ArrangementReport::new(&a, &l))
    }))
}

#[derive(Serialize)]
struct WreathResult {
    label: String,
    n: u64,
    closed_form: String,
    /// `None` when the lattice route was skipped or hit the browser cap.
    direct: Option<String>,
    weyl_order: String,
    hyperplanes: usize,
    agree: Option<bool>,
}

/// Closed-form count for S_n ≀ G next to the count through the lattice of the
/// Catalan arrangement, when that lattice is small enough.
#[wasm_bindgen]
pub fn wreath(label: &str, n: u32) -> String {
    respond(wreath_inner(label, n.into()))
}

fn wreath_inner(label: &str, n: u64) -> Result<WreathResult, Error> {
    let ty: DynkinType = label.parse()?;
    let closed = wreath_count_closed_form(&WeylTypeData::new(ty)?, n)?;
    let spec = CatalanSpec::new(ty, n)?;
    let hyperplanes = sympres::roots::catalan_arrangement(&spec).len();
    let weyl_order = wreath_weyl_data(&spec.ty, n).total_order;
    let direct = if hyperplanes > WEB_MAX_DIRECT_HYPERPLANES {
        None
    } else {
        match wreath_count_direct(&spec, &opts()) {
            Ok(r) => Some(r.resolution_count),
            Err(Error::CapExceeded(_)) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(WreathResult {
        label: ty.to_string(),
        n,
        closed_form: closed.to_string(),
        agree: direct.as_ref().map(|d| *d == closed),
        direct: direct.map(|d| d.to_string()),
        weyl_order: weyl_order.to_string(),
        hyperplanes,
    })
}

#[derive(Serialize)]
struct CatalogCount {
    name: String,
    poincare: Vec<String>,
    os_dimension: String,
    weyl_order: String,
    count: String,
    expected: String,
    matches: bool,
}

/// Resolution count for a built-in entry: q8d8, g4 or wreath:TYPE:N.
#[wasm_bindgen]
pub fn catalog_count(name: &str) -> String {
    respond(catalog(name).and_then(|e| {
        let r = count_resolutions(&e.arrangement, &e.weyl, &opts())?;
        Ok(CatalogCount {
            name: e.name.clone(),
            poincare: r
                .arrangement
                .poincare_poly
                .coefficients()
                .iter()
                .map(ToString::to_string)
                .collect(),
            os_dimension: r.os_dimension.to_string(),
            weyl_order: r.weyl_order.to_string(),
            count: r.resolution_count.to_string(),
            expected: e.expected.count.to_string(),
            matches: r.resolution_count == e.expected.count,
        })
    }))
}
