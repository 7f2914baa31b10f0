//! Algebra specifications: builder name plus parameters, or a JSON file.

use num_traits::Zero;
use trace_pi_core::{
    algebra_from_json, build_c2, build_ck_degenerate, build_dn, build_mn, build_ut2,
    parse_rat, ClosedFormTag, Rat, TraceAlgebra,
};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub name: String,
    pub trace: Option<Vec<Rat>>,
    pub alpha: Option<Rat>,
    pub beta: Option<Rat>,
    pub k: Option<u32>,
    pub file: Option<String>,
}

pub fn parse_trace_list(text: &str) -> Result<Vec<Rat>, CliError> {
    text.split(',')
        .map(|part| {
            parse_rat(part.trim())
                .map_err(|e| CliError::usage(format!("bad trace value: {e}")))
        })
        .collect()
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<TraceAlgebra, CliError> {
        let need_trace = |len: Option<usize>| -> Result<Vec<Rat>, CliError> {
            let t = self.trace.clone().ok_or_else(|| {
                CliError::usage(format!("--algebra {} requires --trace", self.name))
            })?;
            if let Some(len) = len {
                if t.len() != len {
                    return Err(CliError::usage(format!(
                        "--algebra {} expects {len} trace values, got {}",
                        self.name,
                        t.len()
                    )));
                }
            }
            Ok(t)
        };
        match self.name.as_str() {
            "d2" => build_dn(&need_trace(Some(2))?)
                .map_err(|e| CliError::usage(e.to_string())),
            "d3" => build_dn(&need_trace(Some(3))?)
                .map_err(|e| CliError::usage(e.to_string())),
            "dn" => build_dn(&need_trace(None)?)
                .map_err(|e| CliError::usage(e.to_string())),
            "c2" => {
                let alpha = self
                    .alpha
                    .clone()
                    .ok_or_else(|| CliError::usage("--algebra c2 requires --alpha"))?;
                let beta = self
                    .beta
                    .clone()
                    .ok_or_else(|| CliError::usage("--algebra c2 requires --beta"))?;
                Ok(build_c2(&alpha, &beta))
            }
            "ck" => {
                let k = self
                    .k
                    .ok_or_else(|| CliError::usage("--algebra ck requires --k"))?;
                let alpha = self
                    .alpha
                    .clone()
                    .ok_or_else(|| CliError::usage("--algebra ck requires --alpha"))?;
                build_ck_degenerate(k as usize, &alpha)
                    .map_err(|e| CliError::usage(e.to_string()))
            }
            "ut2" => Ok(build_ut2()),
            "mn" => {
                let k = self
                    .k
                    .ok_or_else(|| CliError::usage("--algebra mn requires --k (matrix size)"))?;
                let alpha = self.alpha.clone().unwrap_or_else(|| trace_pi_core::rat(1));
                build_mn(k as usize, &alpha).map_err(|e| CliError::usage(e.to_string()))
            }
            "file" => {
                let path = self
                    .file
                    .clone()
                    .ok_or_else(|| CliError::usage("--algebra file requires --file"))?;
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?;
                algebra_from_json(&text).map_err(|e| CliError::usage(e.to_string()))
            }
            other => Err(CliError::usage(format!("unknown algebra `{other}`"))),
        }
    }

    /// Closed-form tag for the codimension table, when one applies to the
    /// spec exactly.
    pub fn closed_form_tag(&self) -> Option<ClosedFormTag> {
        match self.name.as_str() {
            "d2" | "d3" | "dn" => {
                let trace = self.trace.as_ref()?;
                let d = trace.len();
                let nonzero: Vec<&Rat> = trace.iter().filter(|a| !a.is_zero()).collect();
                let zeros = d - nonzero.len();
                match (d, nonzero.len(), zeros) {
                    (2, 1, 1) => Some(ClosedFormTag::D2A0),
                    (2, 2, 0) => {
                        if nonzero[0] == nonzero[1] {
                            Some(ClosedFormTag::D2AA)
                        } else {
                            Some(ClosedFormTag::D2AB)
                        }
                    }
                    (3, 2, 1) => {
                        if nonzero[0] == nonzero[1] {
                            Some(ClosedFormTag::D3AA0)
                        } else {
                            Some(ClosedFormTag::D3AB0)
                        }
                    }
                    (_, 1, _) if zeros == d - 1 => Some(ClosedFormTag::DnA00),
                    _ => None,
                }
            }
            "ck" => {
                let alpha = self.alpha.as_ref()?;
                let k = self.k?;
                (!alpha.is_zero()).then_some(ClosedFormTag::CkA0 { k })
            }
            "c2" => {
                let alpha = self.alpha.as_ref()?;
                let beta = self.beta.as_ref()?;
                if !beta.is_zero() {
                    if alpha.is_zero() {
                        Some(ClosedFormTag::C201)
                    } else {
                        Some(ClosedFormTag::C2A1)
                    }
                } else if !alpha.is_zero() {
                    Some(ClosedFormTag::CkA0 { k: 2 })
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}
