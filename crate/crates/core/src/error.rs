use thiserror::Error;

/// Errors raised by the solvers and operators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The requested closed form only exists for some orders.
    #[error("order r = {r} is not supported here ({reason})")]
    UnsupportedOrder { r: u32, reason: &'static str },

    /// An operator received a section of the wrong shape, or two sections
    /// living over different points.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The coordinate chart degenerates at the requested point.
    #[error("chart is singular at the requested point: {0}")]
    ChartSingularity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_order(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::Domain {
            what: "r",
            value: f64::from(r),
            domain: "r >= 2",
        });
    }
    Ok(())
}

pub(crate) fn check_open(
    what: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    domain: &'static str,
) -> Result<()> {
    if !(value > lo && value < hi) {
        return Err(Error::Domain {
            what,
            value,
            domain,
        });
    }
    Ok(())
}
