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

#ifndef CLINORM_TOOLS_HTTP_SERVER_H_
#define CLINORM_TOOLS_HTTP_SERVER_H_

#include <string>

#include "clinorm/service.h"

namespace httplib {
class Server;
}

namespace clinorm {

struct HttpOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors_origin = "*";
};

// Registers the service routes and CORS handling on `server`. `service`
// must outlive it.
void RegisterRoutes(httplib::Server &server, const Service &service,
                    const std::string &cors_origin);

// Blocks until the server stops. Returns false if the socket cannot be bound.
bool RunHttpServer(const Service &service, const HttpOptions &options);

}  // namespace clinorm

#endif  // CLINORM_TOOLS_HTTP_SERVER_H_
