import java.io.*;
import javax.swing.*;

public class IOSystemMonitor {
    private HashTable ioActions = new HashTable();

    public IOSystemMonitor() {
    }
}
