#pragma once

#define FRK_VERSION "0.1.0"
