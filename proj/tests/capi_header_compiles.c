/* Compiled as C99 to keep the public header usable from plain C. */
#include "toda/toda.h"

const void* toda_capi_symbol_table[] = {
    (const void*)&toda_version,
    (const void*)&toda_last_error,
    (const void*)&toda_lab_create,
    (const void*)&toda_lab_destroy,
    (const void*)&toda_lab_roots,
    (const void*)&toda_lab_weyl,
    (const void*)&toda_lab_bruhat,
    (const void*)&toda_lab_flow,
    (const void*)&toda_lab_curve_check,
    (const void*)&toda_lab_linearize,
    (const void*)&toda_lab_connectivity,
    (const void*)&toda_lab_verify,
    (const void*)&toda_doc_json,
    (const void*)&toda_doc_csv,
    (const void*)&toda_doc_destroy,
};

const int toda_capi_status_values[] = {TODA_OK, TODA_CONFIG_ERROR,
                                       TODA_NUMERICAL_ERROR,
                                       TODA_INVARIANT_ERROR};
