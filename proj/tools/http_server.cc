// Copyright 2026 The clinorm Authors.
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

#include "http_server.h"

#include <httplib.h>
#include <spdlog/spdlog.h>

namespace clinorm {

namespace {

void Send(httplib::Response &res, const Response &r) {
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

}  // namespace

void RegisterRoutes(httplib::Server &server, const Service &service,
                    const std::string &cors_origin) {
  server.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  // Bodies over the limit are rejected before parsing; leave room for the
  // JSON wrapper around the text.
  server.set_payload_max_length(service.options().max_text_bytes * 2 + 4096);

  server.Options(R"(/.*)", [](const httplib::Request &, httplib::Response &res) {
    res.status = 204;
  });
  server.Post("/annotate", [&service](const httplib::Request &req, httplib::Response &res) {
    Send(res, service.HandleAnnotate(req.body));
  });
  server.Get(R"(/concepts/([^/]+))",
             [&service](const httplib::Request &req, httplib::Response &res) {
               Send(res, service.HandleConcept(req.matches[1].str()));
             });
  server.Get("/semantic-network", [&service](const httplib::Request &, httplib::Response &res) {
    Send(res, service.HandleSemanticNetwork());
  });
  server.Get("/health", [&service](const httplib::Request &, httplib::Response &res) {
    Send(res, service.HandleHealth());
  });
  server.set_error_handler([](const httplib::Request &, httplib::Response &res) {
    if (!res.body.empty()) return;
    Response r = res.status == 413
                     ? ErrorResponse(413, "too_large", "request body too large")
                     : ErrorResponse(res.status, "not_found", "no such endpoint");
    Send(res, r);
  });
  server.set_logger([](const httplib::Request &req, const httplib::Response &res) {
    spdlog::info("{} {} -> {}", req.method, req.path, res.status);
  });
}

bool RunHttpServer(const Service &service, const HttpOptions &options) {
  httplib::Server server;
  RegisterRoutes(server, service, options.cors_origin);
  spdlog::info("listening on {}:{}", options.host, options.port);
  return server.listen(options.host, options.port);
}

}  // namespace clinorm
