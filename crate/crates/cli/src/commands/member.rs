use std::io::Write;

use clap::Args;
use rldg::jn::{invariants, ViolationKind};
use rldg::{DihedralElem, Error, Residue, TreeAut};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::failure::Failure;
use crate::render::{json_line, table};

#[derive(Debug, Args)]
pub struct MemberArgs {
    /// Portrait as `n:hex`, flips in breadth-first order, most significant
    /// bit first
    pub portrait: String,
}

#[derive(Serialize)]
struct ResidueJson {
    value: u64,
    modulus: u64,
}

impl From<Residue> for ResidueJson {
    fn from(r: Residue) -> Self {
        ResidueJson { value: r.value(), modulus: r.modulus() as u64 }
    }
}

#[derive(Serialize)]
struct DihedralJson {
    flip: u8,
    x: ResidueJson,
}

impl From<DihedralElem> for DihedralJson {
    fn from(d: DihedralElem) -> Self {
        DihedralJson { flip: u8::from(d.f), x: d.x.into() }
    }
}

#[derive(Serialize)]
struct ViolationJson {
    path: String,
    level: u32,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    left: Option<DihedralJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    required: Option<DihedralJson>,
    message: String,
}

#[derive(Serialize)]
struct MemberJson {
    schema: &'static str,
    p: u32,
    q: u32,
    n: u32,
    portrait: String,
    member: bool,
    psi: Option<ResidueJson>,
    delta: Option<DihedralJson>,
    violation: Option<ViolationJson>,
}

pub fn run(cfg: &RunConfig, args: &MemberArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let format = cfg.require_format("member", &[Format::Text, Format::Json])?;
    let a = &cfg.alphabet;
    let g = TreeAut::from_hex(&args.portrait)?;
    let n = g.n();
    if let Some(want) = cfg.explicit_n() {
        if want != n {
            return Err(Failure::usage(format!("portrait has depth {n} but n = {want}")));
        }
    }
    let mut doc = MemberJson {
        schema: "rldg/member/v1",
        p: a.p(),
        q: a.q(),
        n,
        portrait: g.to_hex(),
        member: false,
        psi: None,
        delta: None,
        violation: None,
    };
    let mut rows = vec![vec!["portrait".to_string(), g.to_hex()], vec!["alphabet".into(), a.to_string()]];
    match invariants(a, &g) {
        Ok(inv) => {
            rows.push(vec!["member".into(), "yes".into()]);
            rows.push(vec!["psi".into(), inv.psi().to_string()]);
            rows.push(vec!["delta".into(), inv.delta().to_string()]);
            doc.member = true;
            doc.psi = Some(inv.psi().into());
            doc.delta = Some(inv.delta().into());
        }
        Err(Error::NotAMember { violation, .. }) => {
            rows.push(vec!["member".into(), "no".into()]);
            rows.push(vec!["violation".into(), violation.to_string()]);
            let (kind, left, required) = match violation.kind {
                ViolationKind::SectionsDiffer => ("sections_differ", None, None),
                ViolationKind::DeltaMismatch { left, required } => {
                    ("delta_mismatch", Some(left.into()), Some(required.into()))
                }
            };
            doc.violation = Some(ViolationJson {
                path: violation.path.clone(),
                level: violation.level,
                kind,
                left,
                required,
                message: violation.to_string(),
            });
        }
        Err(e) => return Err(e.into()),
    }
    match format {
        Format::Json => json_line(out, &doc)?,
        _ => out.write_all(table(&rows, &[]).as_bytes())?,
    }
    Ok(())
}
