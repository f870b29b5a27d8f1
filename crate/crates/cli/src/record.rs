use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{Map, Number, Value};
use steinberg_core::brauer::dkq_inner_product;
use steinberg_core::{
    build_profile, dim_lk, dkq_closed, dkq_general, Error, OracleContext, PrimePower, Result,
};

pub const HEADER: [&str; 7] = ["k", "q", "dim_Lk", "d_general", "d_closed", "d_oracle", "agree"];
pub const TIMING_HEADER: [&str; 3] = ["t_general_us", "t_closed_us", "t_oracle_us"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Methods {
    pub general: bool,
    pub closed: bool,
    pub oracle: bool,
    pub inner_product: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Timings {
    pub general_us: Option<u128>,
    pub closed_us: Option<u128>,
    pub oracle_us: Option<u128>,
    pub inner_product_us: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputRecord {
    pub k: BigUint,
    pub q: u64,
    pub dim_lk: BigUint,
    pub d_general: Option<BigUint>,
    pub d_closed: Option<BigUint>,
    pub d_oracle: Option<BigUint>,
    pub d_inner_product: Option<BigUint>,
    pub agree: bool,
    pub timings: Timings,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_micros())
}

/// Runs the selected methods; unsupported or guarded methods give `None`.
pub fn compute_record(
    k: &BigUint,
    pp: PrimePower,
    methods: Methods,
    oracle: Option<&OracleContext>,
) -> Result<OutputRecord> {
    let mut timings = Timings::default();
    let mut d_general = None;
    if methods.general {
        let (res, t) = timed(|| dkq_general(k, pp));
        d_general = Some(res?.d);
        timings.general_us = Some(t);
    }
    let mut d_closed = None;
    if methods.closed {
        let (res, t) = timed(|| dkq_closed(k, pp));
        match res {
            Ok(d) => {
                d_closed = Some(d);
                timings.closed_us = Some(t);
            }
            Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let mut d_oracle = None;
    if let (true, Some(ctx), Some(small_k)) = (methods.oracle, oracle, k.to_u64()) {
        let (res, t) = timed(|| ctx.hom_dim(small_k));
        match res {
            Ok(r) => {
                d_oracle = Some(r.d);
                timings.oracle_us = Some(t);
            }
            Err(Error::GuardExceeded(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let mut d_inner_product = None;
    if methods.inner_product {
        let (res, t) = timed(|| dkq_inner_product(k, pp));
        d_inner_product = Some(res?.d);
        timings.inner_product_us = Some(t);
    }
    let values: Vec<&BigUint> = [&d_general, &d_closed, &d_oracle, &d_inner_product]
        .into_iter()
        .flatten()
        .collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    Ok(OutputRecord {
        k: k.clone(),
        q: pp.q(),
        dim_lk: dim_lk(&build_profile(k, pp)),
        d_general,
        d_closed,
        d_oracle,
        d_inner_product,
        agree,
        timings,
    })
}

fn opt(v: &Option<BigUint>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn opt_time(v: Option<u128>) -> String {
    v.map(|t| t.to_string()).unwrap_or_default()
}

fn csv_error(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

pub fn write_csv(out: &mut dyn Write, records: &[OutputRecord], timings: bool) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = HEADER.to_vec();
    if timings {
        header.extend(TIMING_HEADER);
    }
    w.write_record(&header).map_err(csv_error)?;
    for r in records {
        let mut row = vec![
            r.k.to_string(),
            r.q.to_string(),
            r.dim_lk.to_string(),
            opt(&r.d_general),
            opt(&r.d_closed),
            opt(&r.d_oracle),
            r.agree.to_string(),
        ];
        if timings {
            row.extend([
                opt_time(r.timings.general_us),
                opt_time(r.timings.closed_us),
                opt_time(r.timings.oracle_us),
            ]);
        }
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()
}

fn number(n: &BigUint) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer"))
}

fn json_record(r: &OutputRecord, timings: bool) -> Value {
    let opt = |v: &Option<BigUint>| v.as_ref().map_or(Value::Null, number);
    let mut m = Map::new();
    m.insert("k".into(), number(&r.k));
    m.insert("q".into(), Value::from(r.q));
    m.insert("dim_Lk".into(), number(&r.dim_lk));
    m.insert("d_general".into(), opt(&r.d_general));
    m.insert("d_closed".into(), opt(&r.d_closed));
    m.insert("d_oracle".into(), opt(&r.d_oracle));
    m.insert("agree".into(), Value::Bool(r.agree));
    if timings {
        let t = |v: Option<u128>| v.map_or(Value::Null, |x| Value::from(x as u64));
        m.insert(TIMING_HEADER[0].into(), t(r.timings.general_us));
        m.insert(TIMING_HEADER[1].into(), t(r.timings.closed_us));
        m.insert(TIMING_HEADER[2].into(), t(r.timings.oracle_us));
    }
    Value::Object(m)
}

pub fn write_json(out: &mut dyn Write, records: &[OutputRecord], timings: bool) -> std::io::Result<()> {
    let arr = Value::Array(records.iter().map(|r| json_record(r, timings)).collect());
    serde_json::to_writer_pretty(&mut *out, &arr)?;
    writeln!(out)
}
