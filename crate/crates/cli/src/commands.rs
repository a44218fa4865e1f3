use std::io::{Read, Write};

use dwf_core::io::{self as dio, AtlasEntry, DwfDoc, StateDoc};
use dwf_core::{
    concurrence_from_dwf, conjugation_matrix, conversion_map, dwf_from_rho, hadamard_matrix,
    reduce_dwf, reduction_map, rho_from_dwf, spinflip_matrix, stokes_from_rho, Detector, Dwf,
    Enumeration, KeepSet, Net, Nets, State,
};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::Failure;

fn read_value(reader: impl Read) -> Result<Value, Failure> {
    serde_json::from_reader(reader).map_err(|e| Failure::Validation(format!("malformed JSON: {e}")))
}

fn from_value<D: DeserializeOwned>(v: Value, what: &str) -> Result<D, Failure> {
    serde_json::from_value(v)
        .map_err(|e| Failure::Validation(format!("invalid {what} document: {e}")))
}

fn read_state(reader: impl Read) -> Result<State, Failure> {
    Ok(from_value::<StateDoc>(read_value(reader)?, "state")?.to_state()?)
}

fn read_dwf(reader: impl Read) -> Result<(Dwf, Nets), Failure> {
    let w: Dwf = from_value::<DwfDoc>(read_value(reader)?, "DWF")?.to_dwf()?;
    let nets = Nets::new(w.qubits())?;
    Ok((w, nets))
}

fn net_for(nets: &Nets, w: &Dwf) -> Result<Net, Failure> {
    Ok(nets.build(w.net())?)
}

fn emit(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, v)
        .map_err(|e| Failure::Internal(format!("write failed: {e}")))?;
    out.write_all(b"\n")
        .map_err(|e| Failure::Internal(format!("write failed: {e}")))
}

pub fn compute(input: impl Read, out: &mut dyn Write, net: u128) -> Result<(), Failure> {
    let state = read_state(input)?;
    let net = Nets::new(state.qubits())?.build_index(net)?;
    Ok(dio::write_dwf(&dwf_from_rho(&state, &net)?, out)?)
}

pub fn to_rho(input: impl Read, out: &mut dyn Write) -> Result<(), Failure> {
    let (w, nets) = read_dwf(input)?;
    let state = rho_from_dwf(&w, &net_for(&nets, &w)?)?;
    Ok(dio::write_state(&state, out)?)
}

pub fn stokes(input: impl Read, out: &mut dyn Write) -> Result<(), Failure> {
    let v = read_value(input)?;
    let s = if v.get("rho").is_some() {
        stokes_from_rho(&from_value::<StateDoc>(v, "state")?.to_state::<f64>()?)
    } else {
        let w: Dwf = from_value::<DwfDoc>(v, "DWF")?.to_dwf()?;
        let net = Nets::new(w.qubits())?.build(w.net())?;
        hadamard_matrix(&net)?.stokes(&w)?
    };
    Ok(dio::write_stokes(&s, out)?)
}

pub fn reduce(
    input: impl Read,
    out: &mut dyn Write,
    keep: Vec<usize>,
    net_in: Option<u128>,
    net_out: u128,
) -> Result<(), Failure> {
    let (w, nets) = read_dwf(input)?;
    if let Some(id) = net_in {
        if w.net().index() != Some(id) {
            return Err(Failure::Validation(format!(
                "--net-in {id} does not match the input's \"net\" {}",
                w.net()
                    .index()
                    .map_or_else(|| w.net().to_string(), |i| i.to_string())
            )));
        }
    }
    let keep = KeepSet::new(w.qubits(), keep)?;
    let target = Nets::new(keep.len())?.build_index(net_out)?;
    let map = reduction_map(&net_for(&nets, &w)?, &target, &keep)?;
    Ok(dio::write_dwf(&reduce_dwf(&w, &map)?, out)?)
}

pub fn convert(input: impl Read, out: &mut dyn Write, net_out: u128) -> Result<(), Failure> {
    let (w, nets) = read_dwf(input)?;
    let map = conversion_map(&net_for(&nets, &w)?, &nets.build_index(net_out)?)?;
    Ok(dio::write_dwf(&reduce_dwf(&w, &map)?, out)?)
}

#[derive(Copy, Clone, Debug)]
pub enum Flip {
    Spin,
    Conjugate,
}

pub fn flip(input: impl Read, out: &mut dyn Write, kind: Flip) -> Result<(), Failure> {
    let (w, nets) = read_dwf(input)?;
    let net = net_for(&nets, &w)?;
    let m = match kind {
        Flip::Spin => spinflip_matrix(&net)?,
        Flip::Conjugate => conjugation_matrix(&net)?,
    };
    let values = m.apply(w.values())?;
    Ok(dio::write_dwf(
        &Dwf::new(w.qubits(), w.net().clone(), values)?,
        out,
    )?)
}

pub fn concurrence(input: impl Read, out: &mut dyn Write) -> Result<(), Failure> {
    let (w, nets) = read_dwf(input)?;
    let c = concurrence_from_dwf(&w, &net_for(&nets, &w)?)?;
    emit(out, &json!({ "concurrence": c }))
}

pub fn describe(out: &mut dyn Write, n: usize, id: u128) -> Result<(), Failure> {
    let id = Nets::new(n)?.net_id(id)?;
    emit(
        out,
        &AtlasEntry {
            id: id.index().expect("built from an index"),
            digits: id.digits().to_vec(),
            orbit: None,
            product: None,
        },
    )
}

pub fn atlas(
    out: &mut dyn Write,
    n: usize,
    classify: bool,
    detect_product: bool,
    sample: Option<usize>,
    seed: u64,
) -> Result<(), Failure> {
    let nets = Nets::new(n)?;
    let mode = match sample {
        Some(count) => Enumeration::Sample { count, seed },
        None => Enumeration::All,
    };
    let ids = nets.enumerate(&mode)?;
    let classes = if classify {
        Some(nets.classify()?)
    } else {
        None
    };
    let detector = if detect_product {
        if n != 2 {
            return Err(Failure::Validation("--detect-product needs --n 2".into()));
        }
        Some(Detector::new()?)
    } else {
        None
    };
    let entries = ids
        .iter()
        .map(|id| {
            let index = id.index().expect("enumerated ids fit");
            let product = match &detector {
                Some(d) => Some(d.detect(&nets.build(id)?)?.form),
                None => None,
            };
            Ok(AtlasEntry {
                id: index,
                digits: id.digits().to_vec(),
                orbit: classes.as_ref().and_then(|c| c.orbit_of(index)),
                product,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(dio::write_atlas(&entries, out)?)
}
