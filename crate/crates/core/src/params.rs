//! Solver configuration. Defaults follow the published formulas; every
//! constant can be overridden from a JSON params file.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverParams {
    /// Replaces the truncation constant C for every (g, s).
    pub c_override: Option<f64>,
    /// Replaces the truncation radius.
    pub radius_override: Option<usize>,
    /// Replaces the short-cycle bound (cycles of length at most this).
    pub short_cycle_bound_override: Option<usize>,
    /// Largest DP table, in rows, before a resource error.
    pub dp_table_cap: usize,
    /// Largest instance the brute-force fallback accepts.
    pub oracle_vertex_cap: usize,
    /// Euler genus and face-count limits for `decide`.
    pub max_genus: usize,
    pub max_faces: usize,
    /// Answer planar instances without precolored vertices directly.
    pub planar_shortcut: bool,
    /// Fall back to brute force when the DP exceeds its table cap.
    pub oracle_fallback: bool,
    /// Restrict choosability work to the 3-core.
    pub core_reduction: bool,
    /// Largest boundary for choosability list classes.
    pub list_class_cap: usize,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            c_override: None,
            radius_override: None,
            short_cycle_bound_override: None,
            dp_table_cap: 2_000_000,
            oracle_vertex_cap: 40,
            max_genus: 8,
            max_faces: 8,
            planar_shortcut: true,
            oracle_fallback: true,
            core_reduction: true,
            list_class_cap: 6,
        }
    }
}

/// C_0 = 400(10 + ln 2), the constant for one surface with two boundaries.
pub fn c0() -> f64 {
    400.0 * (10.0 + 2f64.ln())
}

/// Largest depth of the cylinder recursion, ⌈100 C_0⌉.
pub fn d_max() -> usize {
    (100.0 * c0()).ceil() as usize
}

impl SolverParams {
    /// C = 400(2g+s−1)(10 + ln(2g+s)), and C = 0 when g = s = 0.
    pub fn truncation_constant(&self, g: usize, s: usize) -> f64 {
        if let Some(c) = self.c_override {
            return c;
        }
        if g == 0 && s == 0 {
            return 0.0;
        }
        let k = (2 * g + s) as f64;
        400.0 * (k - 1.0) * (10.0 + k.ln())
    }

    /// ⌈200(C + 5 + ln(1 + |S|/(C+1)))⌉.
    pub fn truncation_radius(&self, g: usize, s: usize, s_size: usize) -> usize {
        if let Some(r) = self.radius_override {
            return r;
        }
        let c = self.truncation_constant(g, s);
        (200.0 * (c + 5.0 + (1.0 + s_size as f64 / (c + 1.0)).ln())).ceil() as usize
    }

    /// Longest cycle length below 100C.
    pub fn short_cycle_bound(&self, g: usize, s: usize) -> usize {
        if let Some(b) = self.short_cycle_bound_override {
            return b;
        }
        let limit = 100.0 * self.truncation_constant(g, s);
        if limit <= 0.0 {
            0
        } else {
            limit.ceil() as usize - 1
        }
    }

    /// Overrides that differ from the defaults, for run reports.
    pub fn overrides(&self) -> Vec<String> {
        let def = serde_json::to_value(SolverParams::default()).expect("params serialize");
        let cur = serde_json::to_value(self).expect("params serialize");
        let (def, cur) = (def.as_object().cloned().unwrap_or_default(), cur.as_object().cloned().unwrap_or_default());
        cur.iter().filter(|(k, v)| def.get(*k) != Some(v)).map(|(k, v)| format!("{k}={v}")).collect()
    }
}
