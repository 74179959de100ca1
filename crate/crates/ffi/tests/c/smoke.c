#include <stdio.h>
#include <string.h>

#include "objcomb.h"

int main(void) {
    ObjcombTensor *t = NULL;
    if (objcomb_fdb_coproduct(3, &t) != OBJCOMB_STATUS_OK || objcomb_tensor_len(t) != 3) {
        return 1;
    }
    char *json = NULL;
    if (objcomb_tensor_to_json(t, &json) != OBJCOMB_STATUS_OK || json[0] != '[') {
        return 2;
    }
    objcomb_string_free(json);
    objcomb_tensor_free(t);

    size_t count = 0;
    if (objcomb_transversal_count("[[0],[1],[2]]", &count) != OBJCOMB_STATUS_OK || count != 5) {
        return 3;
    }
    if (objcomb_fdb_coproduct(99, &t) != OBJCOMB_STATUS_BOUND_EXCEEDED || objcomb_last_error() == NULL) {
        return 4;
    }
    bool ok = false;
    if (objcomb_plethystic_duality_check("{2:1}", 3, 1, &ok) != OBJCOMB_STATUS_OK || !ok) {
        return 5;
    }
    printf("%s\n", objcomb_version());
    return 0;
}
