//! Exact algorithms for finite classical groups: canonical forms and
//! isometries, spinor norms, and the quotient of the conformal group by the
//! quasisimple classical group.

pub mod error;
pub mod ff;
pub mod forms;
pub mod groups;
pub mod io;
pub mod la;
pub mod quotient;

pub use error::{Error, Result};
pub use ff::{Elt, FieldCtx};
pub use forms::{Form, FormKind, FormType, Label};
pub use groups::{Family, GroupSpec, Level};
pub use la::{Adjoint, Matrix};
pub use quotient::{NormalForm, PcPresentation, Quotient};
