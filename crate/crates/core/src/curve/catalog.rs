use std::f64::consts::{FRAC_PI_2, PI};

use super::construct::RECTIFYING_MARGIN;
use super::{Domain, MulCurve};
use crate::error::{Error, Result};

pub const CATALOG_NAMES: [&str; 4] = ["mul_circle", "equator", "chen_rectifying", "spherical_y"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub components: [&'static str; 3],
    pub log_domain: (f64, f64),
    pub auto_reparametrize: bool,
}

const CIRCLE: [&str; 3] = ["exp(cos(log(t)))", "exp(sin(log(t)))", "1"];
const HALF: f64 = FRAC_PI_2 - RECTIFYING_MARGIN;

const ENTRIES: [CatalogEntry; 4] = [
    CatalogEntry {
        name: "mul_circle",
        description: "multiplicative unit circle about (1, 1) in the plane x3 = 1",
        components: CIRCLE,
        log_domain: (-PI, PI),
        auto_reparametrize: false,
    },
    CatalogEntry {
        name: "equator",
        description: "equator of the unit multiplicative sphere",
        components: CIRCLE,
        log_domain: (-PI, PI),
        auto_reparametrize: false,
    },
    CatalogEntry {
        name: "chen_rectifying",
        description: "rectifying curve sec* s ·* y(s) over the spherical curve y",
        components: [
            "exp(sec(log(t))/sqrt(2))",
            "exp(sec(log(t))*cos(log(t^sqrt(2)))/sqrt(2))",
            "exp(sec(log(t))*sin(log(t^sqrt(2)))/sqrt(2))",
        ],
        log_domain: (-HALF, HALF),
        auto_reparametrize: true,
    },
    CatalogEntry {
        name: "spherical_y",
        description: "unit-speed curve on the unit multiplicative sphere",
        components: ["exp(1/sqrt(2))", "exp(cos(log(t^sqrt(2)))/sqrt(2))", "exp(sin(log(t^sqrt(2)))/sqrt(2))"],
        log_domain: (-PI, PI),
        auto_reparametrize: false,
    },
];

pub fn catalog_entries() -> &'static [CatalogEntry] {
    &ENTRIES
}

pub fn catalog(name: &str) -> Result<MulCurve> {
    let e = ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownCurve(name.to_string()))?;
    let domain = Domain::from_logs(e.log_domain.0, e.log_domain.1)?;
    Ok(MulCurve::parse(e.name, e.components, domain)?.with_auto_reparametrize(e.auto_reparametrize))
}
