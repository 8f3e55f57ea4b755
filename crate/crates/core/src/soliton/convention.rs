use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TensorKind {
    Ricci,
    StarRicci,
}

/// One reading of a soliton equation. The residual is
///
/// `sign_lie * [kappa] * L_V h + sign_tensor * 2 * T + (omega_coeff * Omega + theta_scalar_coeff * theta * S) * h`
///
/// where `T` is the Ricci or *-Ricci tensor and `S` its trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonConvention<C> {
    pub id: String,
    /// The equation as printed in the literature.
    pub printed: String,
    pub tensor: TensorKind,
    pub kappa_on_lie: bool,
    pub sign_lie: i8,
    pub sign_tensor: i8,
    pub omega_coeff: C,
    pub theta_scalar_coeff: C,
    /// How the letters of the printed equation map onto the parameter slots.
    pub parameter_map: String,
}

struct Row {
    id: &'static str,
    printed: &'static str,
    tensor: TensorKind,
    kappa: bool,
    sign_lie: i8,
    sign_tensor: i8,
    omega: i64,
    theta: i64,
    map: &'static str,
}

const ROWS: &[Row] = &[
    Row {
        id: "RICCI_1_2",
        printed: "L_V h + 2 Ric + 2 mu h = 0",
        tensor: TensorKind::Ricci,
        kappa: false,
        sign_lie: 1,
        sign_tensor: 1,
        omega: 2,
        theta: 0,
        map: "mu -> Omega",
    },
    Row {
        id: "KAPPA_1_3",
        printed: "kappa L_V h + 2 Ric + 2 mu h = 0",
        tensor: TensorKind::Ricci,
        kappa: true,
        sign_lie: 1,
        sign_tensor: 1,
        omega: 2,
        theta: 0,
        map: "mu -> Omega",
    },
    Row {
        id: "RB_1_4",
        printed: "L_V h + 2 Ric = 2 Omega h + 2 theta R h",
        tensor: TensorKind::Ricci,
        kappa: false,
        sign_lie: 1,
        sign_tensor: 1,
        omega: -2,
        theta: -2,
        map: "",
    },
    Row {
        id: "KAPPA_RBA_1_5",
        printed: "kappa L_V h + 2 Ric + 2 Omega h + 2 theta R h = 0",
        tensor: TensorKind::Ricci,
        kappa: true,
        sign_lie: 1,
        sign_tensor: 1,
        omega: 2,
        theta: 2,
        map: "lambda_1, beta_1 -> Omega, theta",
    },
    Row {
        id: "STAR_1_7",
        printed: "L_V h + 2 T* + 2 mu h = 0",
        tensor: TensorKind::StarRicci,
        kappa: false,
        sign_lie: 1,
        sign_tensor: 1,
        omega: 2,
        theta: 0,
        map: "mu -> Omega",
    },
    Row {
        id: "STAR_RB_1_8",
        printed: "L_V h + 2 T* = 2 [Omega + theta R*] h",
        tensor: TensorKind::StarRicci,
        kappa: false,
        sign_lie: 1,
        sign_tensor: 1,
        omega: -2,
        theta: -2,
        map: "",
    },
    Row {
        id: "STAR_KAPPA_RBS_1_9",
        printed: "kappa L_V h + 2 T* - (2 Omega + theta R*) h = 0",
        tensor: TensorKind::StarRicci,
        kappa: true,
        sign_lie: 1,
        sign_tensor: 1,
        omega: -2,
        theta: -1,
        map: "",
    },
    Row {
        id: "STAR_KAPPA_RBS_3_1",
        printed: "kappa L_V h + 2 T* - 2 (Omega + theta R*) h = 0",
        tensor: TensorKind::StarRicci,
        kappa: true,
        sign_lie: 1,
        sign_tensor: 1,
        omega: -2,
        theta: -2,
        map: "",
    },
    Row {
        id: "STAR_KAPPA_RBS_3_2",
        printed: "kappa L_V h + 2 T* + (2 Omega - theta R*) h = 0 (metric coefficient read off the Reeb-field reduction)",
        tensor: TensorKind::StarRicci,
        kappa: true,
        sign_lie: 1,
        sign_tensor: 1,
        omega: 2,
        theta: -1,
        map: "",
    },
    Row {
        id: "STAR_KAPPA_RBS_5_7",
        printed: "-kappa L_V h - 2 T* - (2 Omega + theta R*) h = 0 (sign variant matching the worked 5D value of Omega)",
        tensor: TensorKind::StarRicci,
        kappa: true,
        sign_lie: -1,
        sign_tensor: -1,
        omega: -2,
        theta: -1,
        map: "",
    },
];

impl<C: Scalar> SolitonConvention<C> {
    fn from_row(r: &Row) -> Self {
        SolitonConvention {
            id: r.id.to_string(),
            printed: r.printed.to_string(),
            tensor: r.tensor,
            kappa_on_lie: r.kappa,
            sign_lie: r.sign_lie,
            sign_tensor: r.sign_tensor,
            omega_coeff: C::from_int(r.omega),
            theta_scalar_coeff: C::from_int(r.theta),
            parameter_map: r.map.to_string(),
        }
    }

    /// Every built-in preset, in registry order.
    pub fn presets() -> Vec<Self> {
        ROWS.iter().map(Self::from_row).collect()
    }

    pub fn preset(id: &str) -> Option<Self> {
        ROWS.iter().find(|r| r.id == id).map(Self::from_row)
    }

    pub fn preset_ids() -> Vec<&'static str> {
        ROWS.iter().map(|r| r.id).collect()
    }

    /// The residual this convention evaluates, spelled out with its
    /// coefficients.
    pub fn residual_formula(&self) -> String {
        let (t, s) = match self.tensor {
            TensorKind::Ricci => ("Ric", "R"),
            TensorKind::StarRicci => ("T*", "R*"),
        };
        let lie = match (self.sign_lie < 0, self.kappa_on_lie) {
            (false, true) => "kappa*L_V h".to_string(),
            (true, true) => "-kappa*L_V h".to_string(),
            (false, false) => "L_V h".to_string(),
            (true, false) => "-L_V h".to_string(),
        };
        let tensor = if self.sign_tensor < 0 {
            format!(" - 2*{t}")
        } else {
            format!(" + 2*{t}")
        };
        let mut metric = format!("{}*Omega", self.omega_coeff);
        if !self.theta_scalar_coeff.is_zero() {
            let c = &self.theta_scalar_coeff;
            if c.is_negative() {
                metric.push_str(&format!(" - {}*theta*{s}", c.abs()));
            } else {
                metric.push_str(&format!(" + {c}*theta*{s}"));
            }
        }
        format!("{lie}{tensor} + ({metric})*h")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn registry_is_complete() {
        let ids = SolitonConvention::<BigRational>::preset_ids();
        for want in [
            "RICCI_1_2",
            "KAPPA_1_3",
            "RB_1_4",
            "KAPPA_RBA_1_5",
            "STAR_1_7",
            "STAR_RB_1_8",
            "STAR_KAPPA_RBS_1_9",
            "STAR_KAPPA_RBS_3_1",
        ] {
            assert!(ids.contains(&want), "{want}");
        }
        assert!(SolitonConvention::<BigRational>::preset("NOPE").is_none());
    }

    #[test]
    fn formula_is_spelled_out() {
        let c = SolitonConvention::<BigRational>::preset("STAR_KAPPA_RBS_1_9").unwrap();
        assert_eq!(c.residual_formula(), "kappa*L_V h + 2*T* + (-2*Omega - 1*theta*R*)*h");
        let r = SolitonConvention::<BigRational>::preset("RICCI_1_2").unwrap();
        assert_eq!(r.residual_formula(), "L_V h + 2*Ric + (2*Omega)*h");
    }
}
