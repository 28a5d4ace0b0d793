/* semreg: semantic service registry, C interface.
 *
 * Every call returns a semreg_status. Results are JSON documents returned
 * through a char** out parameter and released with semreg_string_free. On
 * failure semreg_last_error() describes the error of the calling thread as
 * a JSON object {"code", "message", "details"}.
 */
#ifndef SEMREG_SEMREG_H
#define SEMREG_SEMREG_H

#include <stddef.h>

#if defined(_WIN32)
#define SEMREG_API __declspec(dllexport)
#else
#define SEMREG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum semreg_status {
  SEMREG_OK = 0,
  SEMREG_XML_MALFORMED,
  SEMREG_UNSUPPORTED_CONSTRUCT_FATAL,
  SEMREG_UNRESOLVED_ENTITY,
  SEMREG_CONFLICTING_DEFINITION,
  SEMREG_CYCLIC_HIERARCHY,
  SEMREG_INVALID_ONTOLOGY,
  SEMREG_UNKNOWN_CLASS,
  SEMREG_UNKNOWN_PROPERTY,
  SEMREG_CHECKED_TAXONOMY_VIOLATION,
  SEMREG_MISSING_OVERVIEW_DOC,
  SEMREG_UNKNOWN_BUSINESS_KEY,
  SEMREG_UNKNOWN_TMODEL_KEY,
  SEMREG_NOT_FOUND,
  SEMREG_TMODEL_IN_USE,
  SEMREG_UNKNOWN_DOMAIN,
  SEMREG_UNKNOWN_GENERIC_CLASS,
  SEMREG_ONTOLOGY_MERGE_CONFLICT,
  SEMREG_INVALID_INSTANCE_DOCUMENT,
  SEMREG_FETCH_FAILED,
  SEMREG_PARSE_FAILED,
  SEMREG_DUPLICATE_ITEM_ID,
  SEMREG_TYPE_MISMATCH,
  SEMREG_MALFORMED_DESCRIPTOR,
  SEMREG_UNSUPPORTED_SCHEMA_TYPE,
  SEMREG_INVALID_ARGUMENT,
  SEMREG_UNAUTHORIZED,
  SEMREG_SNAPSHOT_CORRUPT,
  SEMREG_IO_ERROR,
  SEMREG_INTERNAL
} semreg_status;

typedef struct semreg_store semreg_store;
typedef struct semreg_server semreg_server;

/* Error name as used in JSON envelopes, e.g. "UnknownGenericClass". */
SEMREG_API const char* semreg_status_name(semreg_status status);
/* JSON error object of the last failed call on this thread, "" if none. */
SEMREG_API const char* semreg_last_error(void);
SEMREG_API void semreg_string_free(char* s);
SEMREG_API const char* semreg_version(void);

/* data_dir may be NULL for an in-memory store. options_json may be NULL or
 * {"public_base": "...", "catalog_root": "...", "seed": "<uint64>"}. */
SEMREG_API semreg_status semreg_open(const char* data_dir, const char* options_json, semreg_store** out);
SEMREG_API void semreg_close(semreg_store* store);

SEMREG_API semreg_status semreg_load_ontology_files(semreg_store* store, const char* domain, const char* const* paths,
                                                    size_t count, char** out_json);
/* documents_json: [{"content": RDF/XML, "base": "...", "source_id": "..."}] */
SEMREG_API semreg_status semreg_load_ontology(semreg_store* store, const char* domain, const char* documents_json,
                                              char** out_json);
SEMREG_API semreg_status semreg_load_taxonomy(semreg_store* store, const char* text, char** out_json);

/* kind: "tmodel", "business" or "service". */
SEMREG_API semreg_status semreg_publish(semreg_store* store, const char* kind, const char* draft_json, char** out_json);
SEMREG_API semreg_status semreg_get(semreg_store* store, const char* kind, const char* key, char** out_json);
/* kind: "tmodel" or "service". */
SEMREG_API semreg_status semreg_delete(semreg_store* store, const char* kind, const char* key);
SEMREG_API semreg_status semreg_find_services(semreg_store* store, const char* request_json, char** out_json);
SEMREG_API semreg_status semreg_find_tmodels(semreg_store* store, const char* request_json, char** out_json);

/* request_json: {"instance_document": RDF/XML, "base"?, "instance_url"?, "service": {...}} */
SEMREG_API semreg_status semreg_register(semreg_store* store, const char* domain, const char* request_json,
                                         char** out_json);

/* mode: "functionality", "complement", "addon" or "product". domain may be
 * NULL or "" when exactly one domain exists. predicates_json is used by
 * "product": [{"attribute", "op", "value"}] or ["attr:op:value", ...]. */
SEMREG_API semreg_status semreg_discover(semreg_store* store, const char* domain, const char* mode,
                                         const char* class_name, const char* predicates_json, char** out_json);

/* Combined schema of a domain as RDF/XML. */
SEMREG_API semreg_status semreg_schema(semreg_store* store, const char* domain, char** out_xml);
SEMREG_API semreg_status semreg_domains(semreg_store* store, char** out_json);
SEMREG_API semreg_status semreg_integrity(semreg_store* store, char** out_json);
/* path may be NULL to write <data_dir>/snapshot.json. */
SEMREG_API semreg_status semreg_snapshot(semreg_store* store, const char* path, char** out_json);

/* Reads a JSON config file (path may be NULL), applies SEMREG_LISTEN,
 * SEMREG_DATA_DIR and SEMREG_TOKEN, validates it and returns the effective
 * configuration as JSON. */
SEMREG_API semreg_status semreg_config_load(const char* path, char** out_json);
/* Loads the domains of an effective configuration missing from the store. */
SEMREG_API semreg_status semreg_seed_domains(semreg_store* store, const char* config_json);

/* Starts serving on a background thread; port 0 picks a free port. */
SEMREG_API semreg_status semreg_server_start(semreg_store* store, const char* host, int port, const char* token,
                                             semreg_server** out);
SEMREG_API int semreg_server_port(const semreg_server* server);
/* Stops the server, then flushes a snapshot when the store has a data
 * directory. */
SEMREG_API semreg_status semreg_server_stop(semreg_server* server);

#ifdef __cplusplus
}
#endif

#endif
