/* C interface to the segtri library.
 *
 * All computation is exact; rationals cross this boundary as strings
 * ("p/q" or integer literals) and structured data as JSON documents.
 * Every output string is heap-allocated and must be released with
 * segtri_string_free. Status codes double as the CLI exit codes.
 */
#ifndef SEGTRI_H
#define SEGTRI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct segtri_instance segtri_instance;

typedef enum {
  SEGTRI_OK = 0,
  SEGTRI_VERIFY_FAILED = 1,  /* verification checks did not all pass */
  SEGTRI_INFEASIBLE = 2,     /* target surplus pair unattainable */
  SEGTRI_COLLISION = 3,      /* induced markets coincide; no direct form */
  SEGTRI_INVALID_INPUT = 4,  /* malformed document or violated invariant */
  SEGTRI_INTERNAL_ERROR = 5
} segtri_status;

const char* segtri_version(void);

void segtri_string_free(char* s);

/* Parses {"valuations": [...], "aggregate": [...]}. On failure *error
 * receives a message (may be NULL if not wanted). */
segtri_status segtri_instance_parse(const char* json, segtri_instance** out, char** error);
void segtri_instance_free(segtri_instance* inst);

/* Summary of the instance: K, pi*, w*, optimal price set, whether the
 * aggregate is the equal-revenue market (and its reachable consumer
 * surplus values at pi* if so). json_format selects JSON over text. */
segtri_status segtri_analyze(const segtri_instance* inst, int json_format, char** out,
                             char** error);

/* Constructs a direct segmentation hitting (u, pi) exactly; *out receives
 * the segmentation document. Returns SEGTRI_INFEASIBLE with the reason
 * tag ("outside-triangle" or "prop3-gap") in *error when unattainable. */
segtri_status segtri_synthesize(const segtri_instance* inst, const char* u, const char* pi,
                                char** out, char** error);

/* Converts a segmentation document to direct form. With revised == 0 this
 * is the induced-market construction, which fails with SEGTRI_COLLISION
 * (certificate in *out) when two prices induce the same market; with
 * revised != 0 atoms are keyed by price and the conversion always
 * succeeds. The document must embed its instance. */
segtri_status segtri_convert(const char* segmentation_json, int revised, char** out,
                             char** error);

/* Re-checks every invariant of a segmentation document from first
 * principles; *report receives one line per check. */
segtri_status segtri_verify(const char* segmentation_json, char** report, char** error);

/* Renders the feasible surplus triangle. format is "csv" or "svg";
 * points_json optionally overlays {"points": [{"u": ..., "pi": ...}]}.
 * Output bytes are deterministic for fixed inputs. */
segtri_status segtri_triangle_emit(const segtri_instance* inst, const char* format,
                                   const char* points_json, char** out, char** error);

/* Narrated walkthrough of the bundled fixtures "example1" / "example2":
 * the segmentation, its joint distribution, the induced markets, the
 * collision, and the market-price-form resolution. */
segtri_status segtri_demo(const char* name, char** out, char** error);

#ifdef __cplusplus
}
#endif

#endif
