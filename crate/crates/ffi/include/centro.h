#ifndef CENTRO_H
#define CENTRO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes. The first four match the `centro` CLI exit codes.
typedef enum CentroStatus {
  CENTRO_STATUS_OK = 0,
  CENTRO_STATUS_INPUT_ERROR = 1,
  CENTRO_STATUS_NOT_APPLICABLE = 2,
  CENTRO_STATUS_MISMATCH = 3,
  CENTRO_STATUS_NULL_POINTER = 4,
  CENTRO_STATUS_INVALID_UTF8 = 5,
  CENTRO_STATUS_PANIC = 6,
} CentroStatus;

// Sign rule used when building a Kasteleyn matrix.
typedef enum CentroConvention {
  CENTRO_CONVENTION_VERTICAL_LOWER_BLACK = 0,
  CENTRO_CONVENTION_HORIZONTAL_LEFT_BLACK = 1,
} CentroConvention;

// Order in which a symmetric labeling visits vertices.
typedef enum CentroScan {
  CENTRO_SCAN_ROW_MAJOR = 0,
  CENTRO_SCAN_COLUMN_MAJOR = 1,
} CentroScan;

// A graph on the doubled-coordinate lattice.
typedef struct CentroGraph CentroGraph;

// A parsed matrix together with its source text.
typedef struct CentroMatrix CentroMatrix;

// A region of unit squares.
typedef struct CentroRegion CentroRegion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. The pointer stays
// valid until the next call into this library on the same thread.
const char *centro_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void centro_string_free(char *s);

// Parses a matrix in the text format (`rows cols [Q|Fp:<p>]` then entries).
//
// # Safety
// `source` must be a nul-terminated string and `out` writable.
enum CentroStatus centro_matrix_parse(const char *source, struct CentroMatrix **out);

// # Safety
// `m` must come from [`centro_matrix_parse`] and not be used afterwards.
void centro_matrix_free(struct CentroMatrix *m);

// Row and column counts.
//
// # Safety
// `m` must be a live handle; `rows` and `cols` writable.
enum CentroStatus centro_matrix_dims(const struct CentroMatrix *m, size_t *rows, size_t *cols);

// Exact determinant, written as text in the matrix's field.
//
// # Safety
// `m` must be a live handle and `out` writable.
enum CentroStatus centro_matrix_det(const struct CentroMatrix *m, char **out);

// Classification, determinant and certificate against `k_spec`
// (`alt:<2k>`, `simple:<file>` or `full:<file>`).
//
// # Safety
// `m` must be a live handle, `k_spec` a nul-terminated string and `out`
// writable.
enum CentroStatus centro_matrix_analyze(const struct CentroMatrix *m,
                                        const char *k_spec,
                                        bool verify_oracle,
                                        bool json,
                                        char **out);

// Integral `x^2 + y^2` certificate for an integer matrix.
//
// # Safety
// As for [`centro_matrix_analyze`].
enum CentroStatus centro_matrix_certify(const struct CentroMatrix *m,
                                        const char *k_spec,
                                        bool json,
                                        char **out);

// Parses a region given as `row <y>: <x1>..<x2>,...` lines.
//
// # Safety
// `source` must be a nul-terminated string and `out` writable.
enum CentroStatus centro_region_parse(const char *source, struct CentroRegion **out);

// Aztec diamond of order `n`.
//
// # Safety
// `out` must be writable.
enum CentroStatus centro_region_aztec_diamond(uint32_t n, struct CentroRegion **out);

// Aztec pillow of order `n`.
//
// # Safety
// `out` must be writable.
enum CentroStatus centro_region_aztec_pillow(uint32_t n, struct CentroRegion **out);

// Pillow from comma-separated odd steps and a `<rows>x<width>` band.
// A null `lower` mirrors `steps` below the band.
//
// # Safety
// `steps` and `band` must be nul-terminated strings, `lower` null or a
// nul-terminated string, and `out` writable.
enum CentroStatus centro_region_pillow(const char *steps,
                                       const char *band,
                                       const char *lower,
                                       struct CentroRegion **out);

// # Safety
// `r` must come from a `centro_region_*` constructor and not be used
// afterwards.
void centro_region_free(struct CentroRegion *r);

// Number of cells, or 0 for a null handle.
//
// # Safety
// `r` must be null or a live handle.
size_t centro_region_cells(const struct CentroRegion *r);

// Whether the region is mapped to itself by 180-degree rotation. False for
// a null handle.
//
// # Safety
// `r` must be null or a live handle.
bool centro_region_is_symmetric(const struct CentroRegion *r);

// The region in its text format.
//
// # Safety
// `r` must be a live handle and `out` writable.
enum CentroStatus centro_region_to_string(const struct CentroRegion *r, char **out);

// Domino tiling count, optionally with a certificate and a brute-force
// cross-check.
//
// # Safety
// `r` must be a live handle and `out` writable.
enum CentroStatus centro_region_tile_count(const struct CentroRegion *r,
                                           bool certificate,
                                           bool verify_oracle,
                                           bool json,
                                           char **out);

// Parses a graph given as `v x y` and `e x1 y1 x2 y2` lines.
//
// # Safety
// `source` must be a nul-terminated string and `out` writable.
enum CentroStatus centro_graph_parse(const char *source, struct CentroGraph **out);

// # Safety
// `g` must come from [`centro_graph_parse`] and not be used afterwards.
void centro_graph_free(struct CentroGraph *g);

// Number of perfect matchings, as decimal text.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum CentroStatus centro_graph_count(const struct CentroGraph *g, char **out);

// Matching count, certificate and vertex labeling of a symmetric graph.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum CentroStatus centro_graph_certify(const struct CentroGraph *g,
                                       enum CentroConvention convention,
                                       enum CentroScan scan,
                                       bool json,
                                       char **out);

// Writes the decimal integer `n` as a sum of two squares.
//
// # Safety
// `n` must be a nul-terminated string and `out` writable.
enum CentroStatus centro_sos(const char *n, bool all, bool json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CENTRO_H */
