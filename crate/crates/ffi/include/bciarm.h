#ifndef BCIARM_H
#define BCIARM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BciarmStatus {
  BCIARM_STATUS_OK = 0,
  BCIARM_STATUS_NULL_POINTER = 1,
  BCIARM_STATUS_INVALID_ARGUMENT = 2,
  BCIARM_STATUS_UNREACHABLE = 3,
  BCIARM_STATUS_IO = 4,
  BCIARM_STATUS_PARSE = 5,
  BCIARM_STATUS_NUMERIC = 6,
  BCIARM_STATUS_BUFFER_TOO_SMALL = 7,
  BCIARM_STATUS_PANIC = 8,
} BciarmStatus;

typedef enum BciarmBranch {
  BCIARM_BRANCH_ELBOW_UP = 0,
  BCIARM_BRANCH_ELBOW_DOWN = 1,
} BciarmBranch;

typedef enum BciarmActionKind {
  BCIARM_ACTION_KIND_MOVED = 0,
  BCIARM_ACTION_KIND_REJECTED = 1,
  BCIARM_ACTION_KIND_HOLD = 2,
  BCIARM_ACTION_KIND_AXIS_CHANGE = 3,
} BciarmActionKind;

typedef struct BciarmGeometry BciarmGeometry;

typedef struct BciarmModel BciarmModel;

typedef struct BciarmProcessState BciarmProcessState;

// Radians.
typedef struct BciarmJointAngles {
  double theta0;
  double theta2;
  double theta3;
} BciarmJointAngles;

// Axis indices are 0 = x, 1 = y, 2 = z.
typedef struct BciarmAction {
  enum BciarmActionKind kind;
  uint32_t axis;
  double delta_mm;
  uint32_t new_axis;
} BciarmAction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the message of the last failed call on this thread into `buf` (NUL-terminated,
// truncated to fit) and returns its full length in bytes.
size_t bciarm_last_error(char *buf, size_t len);

// Static NUL-terminated version string.
const char *bciarm_version(void);

struct BciarmGeometry *bciarm_geometry_default(void);

// Reads a `key = value` geometry file.
enum BciarmStatus bciarm_geometry_load(const char *path, struct BciarmGeometry **out);

void bciarm_geometry_free(struct BciarmGeometry *geom);

enum BciarmStatus bciarm_ik_solve(const struct BciarmGeometry *geom,
                                  const double *target,
                                  enum BciarmBranch branch,
                                  struct BciarmJointAngles *out);

// Writes 1 to `out` when the elbow-up solve succeeds, else 0 (and sets the
// last error to the reason).
enum BciarmStatus bciarm_ik_reachable(const struct BciarmGeometry *geom,
                                      const double *target,
                                      int32_t *out);

// Effector position for the given angles into `out[0..3]`, mm.
enum BciarmStatus bciarm_forward_kinematics(const struct BciarmGeometry *geom,
                                            const struct BciarmJointAngles *angles,
                                            double *out);

// Evaluates a multivector expression into 32 coefficients indexed by blade
// bitmask (bit 0 = e1, 1 = e2, 2 = e3, 3 = e+, 4 = e−).
enum BciarmStatus bciarm_cga_eval(const char *expr, double *out);

// Process-control state at the home position, y axis active.
struct BciarmProcessState *bciarm_process_new(void);

void bciarm_process_free(struct BciarmProcessState *state);

// Applies one classified label (0 leaves the state untouched and reports
// a hold).
enum BciarmStatus bciarm_process_step(struct BciarmProcessState *state,
                                      const struct BciarmGeometry *geom,
                                      uint32_t label,
                                      struct BciarmAction *action);

// Effector position into `out[0..3]` and the active axis into `axis`
// (either may be null).
enum BciarmStatus bciarm_process_position(const struct BciarmProcessState *state,
                                          double *out,
                                          uint32_t *axis);

enum BciarmStatus bciarm_model_load(const char *path, struct BciarmModel **out);

void bciarm_model_free(struct BciarmModel *model);

// Classifies every event of an events CSV against a signal CSV. Decisions
// (label codes, 0 for undecided) go to `out`; `written` receives the event
// count even when `cap` is too small.
enum BciarmStatus bciarm_model_classify_files(const struct BciarmModel *model,
                                              const char *signals,
                                              const char *events,
                                              uint32_t *out,
                                              size_t cap,
                                              size_t *written);

// P300 amplitude (µV) and latency (ms) of an averaged −200..+800 ms epoch.
enum BciarmStatus bciarm_p300_from_average(const double *avg,
                                           size_t len,
                                           double sample_rate,
                                           double *amplitude,
                                           double *latency_ms);

// One-way ANOVA. `values` holds the groups back to back with
// `sizes[0..groups]` values each.
enum BciarmStatus bciarm_anova_oneway(const double *values,
                                      const size_t *sizes,
                                      size_t groups,
                                      double *f,
                                      double *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BCIARM_H */
