//! Domains beyond the unit disk and the differential-form view of vector fields.

pub mod annulus;
pub mod conformal_map;
pub mod forms;
pub mod hodge;
pub mod torus;

pub use annulus::{annulus_classify, annulus_inner, annulus_project_con, AnnulusClassification, LaurentField};
pub use conformal_map::{
    MappedGram,
    adjoint_dz_mapped, bergman_kernel_mapped, map_inner_product, map_inner_product_holomorphic,
    map_inner_product_on_image, project_con_mapped, project_con_mapped_holomorphic, ConformalMap,
};
pub use forms::{flat_map, one_form_calculus, sharp_map, Form, FormOp, OneForm, PlanarField};
pub use hodge::{
    hodge_catalog, hodge_membership_annulus, hodge_membership_disk, hodge_membership_torus, HodgeCatalogEntry, HodgeComponent, HodgeDomain,
    MembershipReport, SubspaceDim, TorusMembership, Verdict,
};
pub use torus::{torus_project_con, TorusField, TorusProjection};
