/* C API for the simplicial-complex signal processing library.
 *
 * Conventions:
 *  - every function returns 0 on success and a nonzero code on failure;
 *    scsp_last_error() describes the most recent failure on this thread
 *  - matrices are dense row-major double arrays, caller-allocated after a
 *    shape query
 *  - handles are opaque; free them with the matching *_free function
 */
#ifndef SCSP_H
#define SCSP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct scsp_complex scsp_complex;
typedef struct scsp_snn_model scsp_snn_model;

enum {
    SCSP_OK = 0,
    SCSP_ERROR = 1
};

const char* scsp_version(void);

/* Message for the most recent failure on the calling thread. */
const char* scsp_last_error(void);

/* ---- simplicial complexes ------------------------------------------- */

/* Reads a complex file (lines `simplex v1 v2 ...` of maximal simplices). */
int scsp_complex_load(const char* path, scsp_complex** out);

/* Same format, from memory. */
int scsp_complex_parse(const char* text, scsp_complex** out);

/* Closure of maximal simplices given as flattened vertex lists:
 * simplex i holds vertices[offsets[i]] .. vertices[offsets[i+1]-1].
 * offsets has count+1 entries. */
int scsp_complex_from_simplices(const int64_t* vertices, const int64_t* offsets,
                                int64_t count, scsp_complex** out);

void scsp_complex_free(scsp_complex* c);

/* Highest simplex order present (-1 for the empty complex). */
int scsp_complex_max_order(const scsp_complex* c, int* out);

/* Number of order-k simplices (0 when the order is absent). */
int scsp_complex_count(const scsp_complex* c, int order, int64_t* out);

/* Vertices of the order-k simplex at a canonical index (order+1 entries). */
int scsp_complex_simplex(const scsp_complex* c, int order, int64_t index,
                         int64_t* vertices_out);

/* Canonical index of the simplex with the given vertices. */
int scsp_complex_index_of(const scsp_complex* c, int order, const int64_t* vertices,
                          int64_t* out);

/* Canonical text form (maximal simplices); free with scsp_string_free. */
int scsp_complex_dump(const scsp_complex* c, char** out);
void scsp_string_free(char* s);

/* ---- operators -------------------------------------------------------- */

int scsp_boundary_shape(const scsp_complex* c, int k, int64_t* rows, int64_t* cols);
int scsp_boundary_matrix(const scsp_complex* c, int k, double* out);
int scsp_hodge_laplacian(const scsp_complex* c, int k, double* out); /* n_k x n_k */
int scsp_line_graph_laplacian(const scsp_complex* c, double* out);   /* n_1 x n_1 */
int scsp_betti(const scsp_complex* c, int k, int64_t* out);
int scsp_harmonic_basis_count(const scsp_complex* c, int k, int64_t* out);
int scsp_harmonic_basis(const scsp_complex* c, int k, double* out); /* n_k x count */

/* ---- signal & label files -------------------------------------------- */

/* Full signal (lines `value v1 [v2 [v3]] x`); out has n_k entries. */
int scsp_signal_read(const scsp_complex* c, const char* path, int order, double* out);

/* Partial labels (lines `label v1 [v2] x`). Arrays are library-allocated;
 * free with scsp_index_array_free / scsp_double_array_free. */
int scsp_labels_read(const scsp_complex* c, const char* path, int order,
                     int64_t** indices, double** values, int64_t* count);
void scsp_index_array_free(int64_t* a);
void scsp_double_array_free(double* a);

/* ---- spectral --------------------------------------------------------- */

/* Orthogonal gradient/curl/harmonic split of an edge flow (n_1 entries each). */
int scsp_hodge_decompose(const scsp_complex* c, const double* flow, double* gradient,
                         double* curl, double* harmonic);

/* ---- classic time-domain DSP ----------------------------------------- */

int scsp_dft_matrix(int64_t n, double* real_out, double* imag_out); /* n x n each */
int scsp_circulant_matrix(int64_t n, const double* coeffs, double* out);
int scsp_frequency_response(int64_t n, const double* coeffs, double* real_out,
                            double* imag_out);
int scsp_circulant_apply(int64_t n, const double* coeffs, const double* signal, double* out);

/* ---- filters ----------------------------------------------------------- */

/* regularizer: "hodge" | "edge" | "line-graph" (order 1) or ignored (order 0,
 * graph Laplacian). */
int scsp_denoise_tikhonov(const scsp_complex* c, int order, const char* regularizer,
                          double alpha, const double* y, double* out);

/* diverging_flag (optional) is set to 1 when mu is in the divergent regime. */
int scsp_smooth_iterative(const scsp_complex* c, int order, double mu, int64_t steps,
                          const double* y, double* out, int* diverging_flag);

/* Per-trial 2-norm errors, rows = trials, columns = noisy, line-graph, edge,
 * hodge (trials x 4, row-major). Trial i is seeded with seed + i. */
int scsp_flow_denoise_experiment(const scsp_complex* c, const double* truth, double sigma,
                                 double alpha, uint64_t seed, int64_t trials, double* errors);

/* n samples of sigma * N(0,1) from the library's seeded generator (the same
 * stream the denoising experiment draws for trial 0 of this seed). */
int scsp_gaussian_vector(uint64_t seed, int64_t n, double sigma, double* out);

/* ---- interpolation ----------------------------------------------------- */

int scsp_interpolate_nodes(const scsp_complex* c, const int64_t* labeled_indices,
                           const double* values, int64_t n_labels, double* out);
int scsp_interpolate_edges(const scsp_complex* c, const int64_t* labeled_indices,
                           const double* values, int64_t n_labels, double alpha,
                           int use_triangles, double* out);
int scsp_pearson(const double* a, const double* b, int64_t n, double* out);

/* ---- dynamics ----------------------------------------------------------- */

/* Number of grid points for the uniform grid t = 0, dt, ..., <= t_max. */
int scsp_trajectory_points(double dt, double t_max, int64_t* out);

/* States on the grid (points x n_k, row-major). method: "spectral" | "euler".
 * nonlinearity: NULL for the linear flow, else "identity" | "tanh" (Euler). */
int scsp_simulate(const scsp_complex* c, int order, const double* w0, double dt, double t_max,
                  const char* method, const char* nonlinearity, double* states);

int scsp_detect_holes(const scsp_complex* c, int order, int64_t trials, uint64_t seed,
                      double dt, double t_max, int64_t* out);

/* ---- simplicial neural network ----------------------------------------- */

int scsp_snn_model_load(const char* path, scsp_snn_model** out);
int scsp_snn_model_parse(const char* json_text, scsp_snn_model** out);
void scsp_snn_model_free(scsp_snn_model* m);

int scsp_snn_model_depth(const scsp_snn_model* m, int64_t* out);
int scsp_snn_model_order(const scsp_snn_model* m, int* out);
/* depth+1 entries: input features, then the output features of each layer. */
int scsp_snn_model_feature_dims(const scsp_snn_model* m, int64_t* dims_out);

/* y0 is n_k x f0 row-major; out is n_k x (last feature dim). */
int scsp_snn_forward(const scsp_snn_model* m, const scsp_complex* c, const double* y0,
                     int64_t f0, double* out);

/* Full-batch gradient descent on one (input, target) pair; the model is
 * updated in place and loss_curve receives `epochs` values. */
int scsp_snn_train(scsp_snn_model* m, const scsp_complex* c, const double* y0,
                   const double* target, int64_t f0, int64_t f_target, double lr,
                   int64_t epochs, double* loss_curve);

/* Max deviation between forward on the flipped orientation and the flipped
 * forward output. */
int scsp_snn_equivariance(const scsp_snn_model* m, const scsp_complex* c, const double* y0,
                          int64_t f0, const int64_t* flip_indices, int64_t n_flips,
                          double* max_deviation);

#ifdef __cplusplus
}
#endif

#endif /* SCSP_H */
