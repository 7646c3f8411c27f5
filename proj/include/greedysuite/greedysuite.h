// Copyright 2026 The greedysuite Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// C interface to the greedysuite engine: step-wise greedy test-suite
// construction over coverage utilities, trajectory replay, coverage-projection
// annotation, reward/advantage records and training-data construction.
//
// Conventions:
//  * Every fallible call returns a gs_status. On failure, gs_last_error()
//    returns a message for the calling thread, valid until its next call.
//  * Strings returned through `char**` out-parameters are heap-allocated and
//    must be released with gs_string_free().
//  * Handles are opaque. A gs_task is immutable after loading and may be
//    shared between threads; a gs_session must not be modified while another
//    thread uses it.
//  * Reports are JSON documents (JSONL for record streams).

#ifndef GREEDYSUITE_GREEDYSUITE_H_
#define GREEDYSUITE_GREEDYSUITE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GS_API __declspec(dllexport)
#else
#define GS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gs_status {
  GS_OK = 0,
  GS_ERR_INVALID_ARGUMENT = 1,
  GS_ERR_UNIVERSE_MISMATCH = 2,
  GS_ERR_DUPLICATE_ID = 3,
  GS_ERR_PARSE = 4,
  GS_ERR_SIZE_GUARD = 5,
  GS_ERR_IO = 6,
  GS_ERR_TRANSPORT = 7,
  GS_ERR_UNREACHABLE = 8,
  GS_ERR_INTERNAL = 9
} gs_status;

typedef enum gs_select_mode {
  GS_SELECT_NAIVE = 0,
  GS_SELECT_LAZY = 1,
  GS_SELECT_ORACLE = 2
} gs_select_mode;

typedef enum gs_policy_kind {
  GS_POLICY_POOL_GREEDY = 0,
  GS_POLICY_POOL_RANDOM = 1,
  GS_POLICY_EXTERNAL = 2
} gs_policy_kind;

// Run-wide settings: utility weights, seed, marker, executor and generator.
typedef struct gs_session gs_session;
// One program under test with its coverage universe and candidate pool.
typedef struct gs_task gs_task;

GS_API const char* gs_version(void);
GS_API const char* gs_status_name(gs_status status);
GS_API const char* gs_last_error(void);
GS_API void gs_string_free(char* s);

GS_API gs_status gs_session_create(gs_session** out);
GS_API void gs_session_destroy(gs_session* session);
// "line=<w>,branch=<w>"; missing keys default to 1.
GS_API gs_status gs_session_set_weights(gs_session* session, const char* spec);
GS_API gs_status gs_session_set_seed(gs_session* session, uint64_t seed);
GS_API gs_status gs_session_set_marker(gs_session* session, const char* marker);
// An "http://" URL or a shell command speaking line-delimited JSON.
GS_API gs_status gs_session_set_executor(gs_session* session,
                                         const char* endpoint_or_command,
                                         int timeout_ms);
GS_API gs_status gs_session_set_generator(gs_session* session,
                                          const char* endpoint, int timeout_ms);

// Coverage-matrix JSONL. The task id comes from the header's "task_id", else
// the file stem (load) or `default_task_id` (parse).
GS_API gs_status gs_task_load(const char* path, gs_task** out);
GS_API gs_status gs_task_parse(const char* jsonl, const char* default_task_id,
                               gs_task** out);
GS_API void gs_task_destroy(gs_task* task);
GS_API const char* gs_task_id(const gs_task* task);
GS_API size_t gs_task_candidate_count(const gs_task* task);

// Selection under budget k. NAIVE and LAZY emit a SelectionResult, ORACLE the
// exhaustive optimum.
GS_API gs_status gs_select(const gs_session* session, const gs_task* task,
                           int k, gs_select_mode mode, char** out_json);
// Greedy-orders the whole valid pool and returns the replayed trajectory.
GS_API gs_status gs_order(const gs_session* session, const gs_task* task,
                          char** out_json);
// Replays the given test ids in order.
GS_API gs_status gs_replay(const gs_session* session, const gs_task* task,
                           const char* const* ids, size_t count,
                           char** out_json);
// Replays a trajectory document and fails with GS_ERR_INVALID_ARGUMENT if any
// recorded gain or covered set differs from the recomputed one.
GS_API gs_status gs_replay_trajectory(const gs_session* session,
                                      const gs_task* task,
                                      const char* trajectory_json,
                                      char** out_json);

// coverage_json: {"executable_lines": [...], "covered_lines": [...]}.
GS_API gs_status gs_annotate(const gs_session* session, const char* source,
                             const char* coverage_json, char** out_text);
GS_API gs_status gs_strip_markers(const gs_session* session, const char* text,
                                  char** out_text);

GS_API gs_status gs_build_dataset(const gs_session* session,
                                  const gs_task* const* tasks, size_t count,
                                  double threshold, const char* out_path,
                                  char** out_manifest_json);

GS_API gs_status gs_run_episode(const gs_session* session, const gs_task* task,
                                gs_policy_kind policy, int k, char** out_json);
// kill_matrix_jsonl and solution_outcomes_jsonl may be NULL.
GS_API gs_status gs_evaluate(const gs_session* session,
                             const gs_task* const* tasks, size_t count,
                             gs_policy_kind policy, int k,
                             const char* kill_matrix_jsonl,
                             const char* solution_outcomes_jsonl,
                             char** out_json);

// Reward group for the state reached by replaying state_ids, sampling the
// pool candidates action_ids. Emits one training record per action (JSONL).
GS_API gs_status gs_score_group(const gs_session* session, const gs_task* task,
                                const char* const* state_ids, size_t state_count,
                                const char* const* action_ids,
                                size_t action_count, char** out_jsonl);

// Greedy vs exhaustive optimum over seeded random instances.
GS_API gs_status gs_verify_bound(const gs_session* session, int instances,
                                 int candidates, int k, int max_units,
                                 char** out_json);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // GREEDYSUITE_GREEDYSUITE_H_
